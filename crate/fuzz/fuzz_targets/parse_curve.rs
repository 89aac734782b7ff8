#![no_main]

use curve_milnor::frontend::{parse_curve, parse_polynomial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_polynomial(s);
        if let Err(e) = parse_curve(s) {
            let _ = (e.code(), e.exit_code(), e.to_string());
        }
    }
});
