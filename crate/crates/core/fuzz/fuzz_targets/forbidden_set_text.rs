#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = ftcs::parse_forbidden_set(text) {
        // anything accepted must survive its own rendering
        assert_eq!(ftcs::parse_forbidden_set(&f.to_text()).unwrap(), f);
    }
});
