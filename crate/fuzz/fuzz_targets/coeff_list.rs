#![no_main]

use libfuzzer_sys::fuzz_target;
use torimax::parse::{format_rational, parse_coefficients};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(c) = parse_coefficients(text) else {
        return;
    };
    let printed = c.iter().map(format_rational).collect::<Vec<_>>().join(",");
    assert_eq!(
        parse_coefficients(&printed).expect("printed list parses"),
        c
    );
});
