#![no_main]

use libfuzzer_sys::fuzz_target;
use torimax::parse::parse_polytope_json;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_polytope_json(text) {
        assert!(p.dim() <= p.ambient_dim());
        let _ = torimax::invariants::invariant_report(&p);
        if p.ambient_dim() >= 3 {
            let _ = torimax::certifier::certify_recursive(&p);
        }
    }
});
