#![no_main]

use curve_milnor::frontend::{parse_polynomial, print_polynomial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(p) = parse_polynomial(s) {
        let text = print_polynomial(&p);
        let q = parse_polynomial(&text).expect("printed polynomials parse");
        assert_eq!(p, q, "{text}");
    }
});
