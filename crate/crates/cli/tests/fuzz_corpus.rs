//! Replays the checked-in fuzz seeds through the fuzz-target invariants.
use std::path::PathBuf;

use cpswf::clifford::Multivector;
use cpswf::monogenics::PolyMultivector;
use cpswf_cli::range::{parse_degrees, MAX_DEGREE};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<String> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|f| std::fs::read_to_string(f.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn multivector_seeds() {
    let parsed = seeds("multivector_json").iter().filter_map(|s| Multivector::from_json(s).ok()).count();
    assert!(parsed >= 2);
    for s in seeds("multivector_json") {
        if let Ok(a) = Multivector::from_json(&s) {
            assert_eq!(Multivector::from_json(&a.to_json()).unwrap(), a);
        }
    }
}

#[test]
fn poly_seeds() {
    for s in seeds("poly_json") {
        let p = PolyMultivector::from_json(&s).unwrap();
        assert_eq!(PolyMultivector::from_json(&p.to_json()).unwrap(), p);
    }
}

#[test]
fn degree_seeds() {
    for s in seeds("degree_range") {
        if let Ok(ks) = parse_degrees(&s) {
            assert!(ks.windows(2).all(|w| w[0] < w[1]));
            assert!(*ks.last().unwrap() <= MAX_DEGREE);
        }
    }
}
