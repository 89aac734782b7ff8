#![no_main]

use curve_milnor::frontend::{analyze, parse_polynomial, Flags};
use curve_milnor::toric::ResolveConfig;
use libfuzzer_sys::fuzz_target;

const MAX_INPUT_DEGREE: u32 = 12;

fuzz_target!(|s: &str| {
    let Ok(p) = parse_polynomial(s) else { return };
    if p.total_degree() > MAX_INPUT_DEGREE {
        return;
    }
    let flags = Flags {
        resolve: ResolveConfig {
            max_tower_degree: 8,
            max_depth: 6,
        },
        ..Flags::default()
    };
    if let Ok(r) = analyze(s, &flags) {
        let _ = r.to_json();
        if let Some(m) = &r.motivic {
            assert!(m.routes_agree, "{s}");
        }
    }
});
