use proptest::prelude::*;

use curve_milnor::exact::{rat, BiPoly, Rational};
use curve_milnor::frontend::{parse_curve, parse_polynomial, print_polynomial, FrontendError, MAX_DEGREE};

#[test]
fn grammar_forms() {
    let cases = [
        ("x*y", "x*y"),
        ("x y", "x*y"),
        ("2x", "2*x"),
        ("(x)^0", "1"),
        ("-x + y", "y - x"),
        ("x - -y", ""),
        ("3/6 x^2", "1/2*x^2"),
        ("(x+y)^2 - x^2 - y^2", "2*x*y"),
        ("  y ^ 2\t+ x ^3 ", "y^2 + x^3"),
        ("x - x", "0"),
    ];
    for (input, want) in cases {
        match parse_polynomial(input) {
            Ok(p) => assert_eq!(print_polynomial(&p), want, "{input}"),
            Err(e) => assert!(want.is_empty(), "{input}: {e}"),
        }
    }
}

#[test]
fn rejects_malformed_input() {
    for bad in [
        "", "x^", "x^-1", "(x", "x)", "z", "x ^ y", "1/", "2/0", "x + * y", "x^1.5", "1/-2", "xy**2",
    ] {
        let e = parse_polynomial(bad).unwrap_err();
        assert!(e.position <= bad.len(), "{bad}: {e}");
    }
}

#[test]
fn resource_caps() {
    assert!(parse_polynomial(&format!("x^{MAX_DEGREE}")).is_ok());
    assert!(parse_polynomial(&format!("x^{}", MAX_DEGREE + 1)).is_err());
    assert!(parse_polynomial("(x+y)^100 (x+y)^100").is_err());
    assert!(parse_polynomial(&"(".repeat(10_000)).is_err());
    assert!(parse_polynomial(&"9".repeat(10_000)).is_err());
    assert!(parse_polynomial("x*".repeat(200).trim_end_matches('*')).is_err());
}

#[test]
fn curve_checks() {
    assert_eq!(parse_curve("y^2 + x^3 + 1").unwrap_err().code(), "E_NOT_VANISHING");
    assert_eq!(parse_curve("1/2").unwrap_err().exit_code(), 3);
    assert!(matches!(parse_curve("y^2 +"), Err(FrontendError::Parse(_))));
    let f = parse_curve("(y^2-x^3)^2 + x^7").unwrap();
    let want = BiPoly::from_ints(&[((0, 4), 1), ((3, 2), -2), ((6, 0), 1), ((7, 0), 1)]);
    assert_eq!(f, want);
}

fn arb_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..6, 0u32..6), -20i64..20, 1i64..7), 0..8).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(e, n, d)| BiPoly::from_rationals([(e, rat(n, d))]))
            .fold(BiPoly::from_rationals(Vec::<((u32, u32), Rational)>::new()), |a, b| {
                a.add(&b)
            })
    })
}

proptest! {
    #[test]
    fn print_parse_roundtrip(p in arb_poly()) {
        let text = print_polynomial(&p);
        prop_assert_eq!(parse_polynomial(&text).unwrap(), p);
    }

    #[test]
    fn never_panics(s in "[xy0-9()+*/^ -]{0,40}") {
        let _ = parse_polynomial(&s);
    }
}

#[test]
fn fuzz_corpus_replays_cleanly() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut seen = 0;
    for dir in std::fs::read_dir(&root).unwrap() {
        for entry in std::fs::read_dir(dir.unwrap().path()).unwrap() {
            let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
            if let Ok(p) = parse_polynomial(&text) {
                assert_eq!(parse_polynomial(&print_polynomial(&p)).unwrap(), p, "{text}");
            }
            let _ = parse_curve(&text);
            seen += 1;
        }
    }
    assert!(seen > 0);
}
