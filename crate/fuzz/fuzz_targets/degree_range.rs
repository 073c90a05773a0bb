#![no_main]
use cpswf_cli::range::{parse_degrees, MAX_DEGREE};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(ks) = parse_degrees(s) {
        assert!(!ks.is_empty());
        assert!(ks.windows(2).all(|w| w[0] < w[1]));
        assert!(*ks.last().unwrap() <= MAX_DEGREE);
    }
});
