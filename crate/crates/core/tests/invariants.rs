use proptest::prelude::*;

use curve_milnor::exact::{is_locally_reduced, BiPoly};
use curve_milnor::frontend::{annotated_graph, parse_curve};
use curve_milnor::gring::{assemble_main1, decompose_affine, normalize, Generator, MotClass};
use curve_milnor::oracle::{count_arcs_cone, initial_form, ArcQuery, DEFAULT_BUDGET};
use curve_milnor::realize::{spectrum_partial, zeta_of_class};
use curve_milnor::toric::ResolveConfig;

const SUITE: [&str; 9] = [
    "y^2 + x^3",
    "y^4 - 2x^3y^2 - x^5y + x^6",
    "(y^2 - x^3)^2 + x^7",
    "(y + x)(y^2 + x^3)",
    "y^3 + x^4",
    "y^3 + x^5",
    "(y^2 + x^3)(y^2 - x^3)",
    "x y (y - x)",
    "(y^2 + x^2)^2 + x^5",
];

fn main1(text: &str) -> MotClass {
    let g = annotated_graph(&parse_curve(text).unwrap(), &ResolveConfig::default()).unwrap();
    assemble_main1(&g)
}

fn generators() -> Vec<Generator> {
    SUITE
        .iter()
        .flat_map(|t| main1(t).terms.into_iter().map(|t| t.generator))
        .chain([
            Generator::One,
            Generator::Mu(1),
            Generator::Mu(4),
            Generator::Monomial(2, 3),
        ])
        .collect()
}

fn arb_class() -> impl Strategy<Value = MotClass> {
    let gens = generators();
    prop::collection::vec((-3i64..=3, 0i32..3, prop::sample::select(gens)), 0..8).prop_map(|ts| {
        let mut c = MotClass::zero();
        for (k, e, g) in ts {
            c.push(k, e, g);
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent_and_linear(a in arb_class(), b in arb_class()) {
        let na = normalize(&a);
        prop_assert_eq!(normalize(&na), na.clone());
        let sum = normalize(&(a.clone() + &b));
        prop_assert_eq!(sum, normalize(&(na + &normalize(&b))));
        prop_assert!((a.clone() - &a).is_zero());
    }
}

#[test]
fn decomposition_preserves_zeta() {
    for text in SUITE {
        for t in main1(text).terms {
            if let Generator::AffineFace(face) = &t.generator {
                let d = decompose_affine(face);
                let lhs = zeta_of_class(&MotClass::generator(t.generator.clone())).unwrap();
                assert_eq!(zeta_of_class(&normalize(&d.class)).unwrap(), lhs, "{text}");
            }
        }
    }
}

#[test]
fn closed_spectra_are_symmetric() {
    for text in SUITE {
        let f = parse_curve(text).unwrap();
        let sp = spectrum_partial(&normalize(&main1(text)));
        if is_locally_reduced(&f) && sp.residual.is_empty() {
            assert!(sp.is_symmetric(), "{text}: {}", sp.render());
        }
    }
}

fn arc_count(f: &BiPoly, omega: (u32, u32), n: u32, prime: u64) -> u128 {
    count_arcs_cone(&ArcQuery { f, omega, n, prime }, DEFAULT_BUDGET).unwrap()
}

#[test]
fn face_cone_counts_carry_l_powers() {
    let mut checked = 0;
    for (text, primes) in [("y^2 + x^3", [5u64, 7]), ("y^2 + x^5", [3, 7]), ("y^3 + x^4", [5, 7])] {
        let f = parse_curve(text).unwrap();
        for prime in primes {
            for p in 1..=6u32 {
                for q in 1..=6u32 {
                    let ell = f.support().map(|(a, b)| p * a + q * b).min().unwrap();
                    if initial_form(&f, (p, q)).len() < 2 {
                        continue;
                    }
                    for n in ell..=(ell + 1).min(13) {
                        if n < p.max(q) {
                            continue;
                        }
                        let exp = 2 * n as i64 - (p + q) as i64 - (n - ell) as i64;
                        let count = arc_count(&f, (p, q), n, prime);
                        if exp >= 0 {
                            let power = (prime as u128).pow(exp as u32);
                            assert_eq!(count % power, 0, "{text} q={prime} Ω=({p},{q}) n={n}");
                            checked += usize::from(count > 0);
                        }
                    }
                }
            }
        }
    }
    assert!(checked >= 10, "only {checked} nonzero cases");
}

#[test]
fn counts_do_not_depend_on_thread_count() {
    let f = parse_curve("y^2 + x^3").unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| [(6, 5), (7, 3), (7, 7)].map(|(n, q)| arc_count(&f, (2, 3), n, q)))
    };
    assert_eq!(run(1), run(4));
}

fn arb_germ() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec(((0u32..6, 0u32..6), -3i64..=3), 1..7).prop_map(|terms| {
        let terms: Vec<((u32, u32), i64)> = terms.into_iter().filter(|(e, _)| *e != (0, 0)).collect();
        BiPoly::from_ints(&terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pipeline_is_total_on_small_germs(f in arb_germ()) {
        prop_assume!(!f.is_zero());
        let flags = curve_milnor::frontend::Flags {
            resolve: ResolveConfig { max_tower_degree: 8, max_depth: 8 },
            ..Default::default()
        };
        match curve_milnor::frontend::run_pipeline(&f, &flags) {
            Ok(r) => {
                let m = r.motivic.unwrap();
                prop_assert!(m.routes_agree);
                prop_assert!(r.zeta.unwrap().class_agrees);
                if let Some(mu) = r.milnor_number {
                    prop_assert_eq!(curve_milnor::oracle::milnor_jacobian(&f).ok(), Some(mu));
                }
            }
            Err(e) => prop_assert!(e.exit_code() == 4, "{}: {e}", f.render(("x", "y"))),
        }
    }
}
