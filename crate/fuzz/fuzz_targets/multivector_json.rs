#![no_main]
use cpswf::clifford::Multivector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(a) = Multivector::from_json(s) {
        let back = Multivector::from_json(&a.to_json()).expect("re-encoded value parses");
        assert_eq!(back.dim(), a.dim());
    }
});
