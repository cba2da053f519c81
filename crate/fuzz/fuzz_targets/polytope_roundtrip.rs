#![no_main]

use libfuzzer_sys::fuzz_target;
use torimax::parse::{parse_polytope_json, polytope_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = parse_polytope_json(text) else {
        return;
    };
    let again = parse_polytope_json(&polytope_to_json(&p)).expect("serialized polytope parses");
    assert_eq!(again, p);
});
