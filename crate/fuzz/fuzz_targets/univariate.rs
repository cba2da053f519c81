#![no_main]

use libfuzzer_sys::fuzz_target;
use torimax::gauss_fiber::univariate_harnack_check;
use torimax::parse::parse_coefficients;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(c) = parse_coefficients(text) else {
        return;
    };
    if let Ok(check) = univariate_harnack_check(&c) {
        assert!(check.real_roots <= check.degree);
        assert!(!check.maximal || check.squarefree);
    }
});
