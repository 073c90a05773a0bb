#![no_main]
use cpswf::monogenics::PolyMultivector;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = PolyMultivector::from_json(s) {
        PolyMultivector::from_json(&p.to_json()).expect("re-encoded value parses");
    }
});
