#![no_main]

use ftcs::graph::parse_json;
use ftcs::Format;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = parse_json(text) {
        let once = doc.render(Format::Json);
        let again = parse_json(std::str::from_utf8(&once).unwrap()).unwrap();
        assert_eq!(again.render(Format::Json), once);
    }
});
