//! Acceptance criteria 1 through 10. Each test prints one PASS/FAIL line.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curve_milnor::exact::{is_locally_reduced, BiPoly, Rational};
use curve_milnor::frontend::{analyze, annotated_graph, parse_curve, print_polynomial, Flags};
use curve_milnor::graph::{GraphKind, ResolutionGraph};
use curve_milnor::gring::{assemble_main1, assemble_prop32, decompose_all, face_data, normalize, Generator, MotClass};
use curve_milnor::oracle::{count_arcs_cone, milnor_jacobian, verify_cone_identities, ArcQuery, DEFAULT_BUDGET};
use curve_milnor::realize::{charpoly_milnor, spectrum_partial, zeta_of_class, zeta_of_graph};
use curve_milnor::toric::ResolveConfig;

const CUSP: &str = "y^2 + x^3";
const TWO_PAIR: &str = "y^4 - 2x^3y^2 - x^5y + x^6";
const TOWER: &str = "(y^2 - x^3)^2 + x^7";
const TWO_FACE: &str = "(y + x)(y^2 + x^3)";
/// (a, b, A) for `(y^a + x^b)^A`.
const FORMULA_CASES: [(u32, u32, u32); 3] = [(2, 3, 1), (2, 3, 2), (3, 4, 1)];
const RANDOM_SEED: u64 = 0x5eed_2024;
const RANDOM_COUNT: usize = 20;
const RANDOM_MAX_DEGREE: u32 = 10;
/// Wall-clock ceiling for criterion 1.
const CUSP_TIME: Duration = Duration::from_secs(1);
/// Wall-clock ceiling for the cone identities of criterion 8.
const CONE_TIME: Duration = Duration::from_secs(60);

struct Line {
    criterion: u32,
    checks: Vec<(String, bool)>,
}

impl Line {
    fn new(criterion: u32) -> Self {
        Line {
            criterion,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push((what.into(), ok));
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        let ok = got == want;
        let what = if ok {
            what.to_string()
        } else {
            format!("{what}: got {got:?}, want {want:?}")
        };
        self.check(what, ok);
    }

    fn finish(self) {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
        if failed.is_empty() {
            println!("criterion {}: PASS ({} checks)", self.criterion, self.checks.len());
        } else {
            println!("criterion {}: FAIL [{}]", self.criterion, failed.join("; "));
        }
        assert!(
            failed.is_empty(),
            "criterion {} failed: {}",
            self.criterion,
            failed.join("; ")
        );
    }
}

fn graph(text: &str) -> ResolutionGraph {
    annotated_graph(&parse_curve(text).unwrap(), &ResolveConfig::default()).unwrap()
}

fn multiplicities(g: &ResolutionGraph, bamboo: usize) -> (Option<u64>, Vec<u64>, Option<u64>) {
    let b = &g.bamboos[bamboo];
    (
        b.q_left_multiplicity,
        b.vertices.iter().map(|v| v.multiplicity.unwrap()).collect(),
        b.q_right_multiplicity,
    )
}

fn zeta_text(text: &str) -> String {
    zeta_of_graph(&graph(text)).to_string()
}

fn mu_both(line: &mut Line, text: &str, want: u64) {
    let f = parse_curve(text).unwrap();
    let cp = charpoly_milnor(&zeta_of_graph(&graph(text)), &f).unwrap();
    line.eq(&format!("deg Δ for {text}"), cp.mu, want);
    line.eq(&format!("Jacobian μ for {text}"), milnor_jacobian(&f).unwrap(), want);
}

/// `y ↦ y + c·x^s` applied to `y^a + λ x^b`.
fn shifted_brieskorn(a: u32, b: u32, lambda: i64, c: i64, s: u32) -> BiPoly {
    let y = BiPoly::from_ints(&[((0, 1), 1), ((s, 0), c)]);
    y.pow(a).add(&BiPoly::from_ints(&[((b, 0), lambda)]))
}

fn random_products() -> Vec<BiPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut out = Vec::new();
    while out.len() < RANDOM_COUNT {
        let k = rng.gen_range(1..=3);
        let mut f = BiPoly::from_ints(&[((0, 0), 1)]);
        for _ in 0..k {
            let a = rng.gen_range(1..=3);
            let b = rng.gen_range(1..=5);
            let lambda = [1, -1, 2][rng.gen_range(0..3)];
            let c = rng.gen_range(-2..=2);
            let s = rng.gen_range(1..=2);
            f = f.mul(&shifted_brieskorn(a, b, lambda, c, s));
        }
        if f.total_degree() <= RANDOM_MAX_DEGREE && f.constant_term().is_none() {
            out.push(f);
        }
    }
    out
}

fn suite() -> Vec<BiPoly> {
    let mut v: Vec<BiPoly> = [CUSP, TWO_PAIR, TOWER, TWO_FACE]
        .iter()
        .map(|t| parse_curve(t).unwrap())
        .collect();
    for (a, b, aa) in FORMULA_CASES {
        v.push(BiPoly::from_ints(&[((0, a), 1), ((b, 0), 1)]).pow(aa));
    }
    v.extend([2, 3, 5].map(|n| BiPoly::from_ints(&[((n, 0), 1)])));
    v.extend(random_products());
    v
}

#[test]
fn criterion_01_cusp() {
    let mut line = Line::new(1);
    let start = Instant::now();
    let g = graph(CUSP);
    line.eq("multiplicities", multiplicities(&g, 0), (Some(2), vec![6], Some(3)));
    let f = parse_curve(CUSP).unwrap();
    let z = zeta_of_graph(&g);
    line.eq("zeta", z.to_string().as_str(), "(1-t^6)/((1-t^2)(1-t^3))");
    let cp = charpoly_milnor(&z, &f).unwrap();
    line.eq("charpoly", cp.render().as_str(), "t^2 - t + 1");
    line.eq("deg Δ", cp.mu, 2);
    line.eq("Jacobian μ", milnor_jacobian(&f).unwrap(), 2);
    let sp = spectrum_partial(&normalize(&assemble_main1(&g)));
    line.eq("spectrum", sp.render().as_str(), "t^(5/6) + t^(7/6)");
    line.check("residual empty", sp.residual.is_empty());
    let elapsed = start.elapsed();
    line.check(format!("runtime {elapsed:?} < {CUSP_TIME:?}"), elapsed < CUSP_TIME);
    line.finish();
}

#[test]
fn criterion_02_two_pairs() {
    let mut line = Line::new(2);
    let g = graph(TWO_PAIR);
    line.eq("bamboo count", g.bamboos.len(), 2);
    let (b1, b2) = (&g.bamboos[0], &g.bamboos[1]);
    line.eq("(a1,b1)", (b1.vertices[0].weight.a, b1.vertices[0].weight.b), (2, 3));
    line.eq("(a2,b2)", (b2.vertices[0].weight.a, b2.vertices[0].weight.b), (2, 1));
    let m1 = b1.vertices[0].multiplicity.unwrap();
    line.eq("m(P_B1)", m1, 12);
    let (a2, bb2) = (b2.vertices[0].weight.a, b2.vertices[0].weight.b);
    let a_cluster = b2.vertices[0].clusters[0].multiplicity;
    line.eq(
        "m(P_B2) = a2 m(P_B1) + a2 b2 A",
        b2.vertices[0].multiplicity.unwrap(),
        a2 * m1 + a2 * bb2 * a_cluster,
    );
    line.eq("m(P_B2)", b2.vertices[0].multiplicity.unwrap(), 26);
    line.eq("q_right", b2.q_right_multiplicity, Some(13));
    line.eq(
        "zeta",
        zeta_text(TWO_PAIR).as_str(),
        "(1-t^12)(1-t^26)/((1-t^4)(1-t^6)(1-t^13))",
    );
    mu_both(&mut line, TWO_PAIR, 16);
    line.finish();
}

#[test]
fn criterion_03_tower() {
    let mut line = Line::new(3);
    let g = graph(TOWER);
    line.eq("bamboo count", g.bamboos.len(), 2);
    let floor2 = &g.bamboos[1];
    let v = &floor2.vertices[0];
    line.eq("r", v.r(), 2);
    line.eq("m", v.multiplicity, Some(14));
    let c = &v.clusters[0];
    line.eq("conjugacy degree", c.degree, 2);
    let xi = curve_milnor::graph::poly_json(&c.xi_polynomial(), "z");
    line.eq("xi", xi.text.as_str(), "z^2 + 1");
    line.eq("zeta", zeta_text(TOWER).as_str(), "(1-t^12)(1-t^14)/((1-t^4)(1-t^6))");
    mu_both(&mut line, TOWER, 17);
    line.finish();
}

#[test]
fn criterion_04_two_faces() {
    let mut line = Line::new(4);
    let g = graph(TWO_FACE);
    let b = &g.bamboos[0];
    let weights: Vec<(u64, u64)> = b.vertices.iter().map(|v| (v.weight.a, v.weight.b)).collect();
    line.eq("faces", weights, vec![(1, 1), (2, 3)]);
    line.eq("m(P)", multiplicities(&g, 0).1, vec![3, 8]);
    line.eq("zeta", zeta_text(TWO_FACE).as_str(), "(1-t^8)/(1-t^4)");
    mu_both(&mut line, TWO_FACE, 5);
    line.finish();
}

#[test]
fn criterion_05_formula_classes() {
    let mut line = Line::new(5);
    let cfg = ResolveConfig::default();
    for (a, b, aa) in FORMULA_CASES {
        let f = BiPoly::from_ints(&[((0, a), 1), ((b, 0), 1)]).pow(aa);
        let g = annotated_graph(&f, &cfg).unwrap();
        let mut want = MotClass::generator(Generator::AffineFace(face_data(&g.bamboos[0], 0)));
        want.push_l_minus_one(-1, Generator::Mu(aa as u64));
        line.eq(
            &format!("(y^{a}+x^{b})^{aa}"),
            normalize(&assemble_main1(&g)),
            normalize(&want),
        );
        line.eq(&format!("(y^{a}+x^{b})^{aa} bamboos"), g.bamboos.len(), 1);
    }
    for n in [1u32, 2, 5, 7] {
        let g = annotated_graph(&BiPoly::from_ints(&[((n, 0), 1)]), &cfg).unwrap();
        line.check(format!("x^{n} monomial"), matches!(g.kind, GraphKind::Monomial { .. }));
        line.eq(
            &format!("x^{n}"),
            normalize(&assemble_main1(&g)),
            normalize(&MotClass::generator(Generator::Mu(n as u64))),
        );
    }
    line.finish();
}

#[test]
fn criterion_06_route_equality() {
    let mut line = Line::new(6);
    let cfg = ResolveConfig::default();
    for f in suite() {
        let g = annotated_graph(&f, &cfg).unwrap();
        let main1 = assemble_main1(&g);
        let lhs = normalize(&decompose_all(&main1).class);
        let rhs = normalize(&assemble_prop32(&g));
        line.check(print_polynomial(&f), lhs == rhs);
    }
    line.finish();
}

#[test]
fn criterion_07_realizations() {
    let mut line = Line::new(7);
    let cfg = ResolveConfig::default();
    for f in suite() {
        let name = print_polynomial(&f);
        let g = annotated_graph(&f, &cfg).unwrap();
        let z = zeta_of_graph(&g);
        let zc = zeta_of_class(&normalize(&assemble_main1(&g)));
        line.check(format!("zeta {name}"), zc.as_ref() == Ok(&z));
        if !is_locally_reduced(&f) {
            continue;
        }
        match charpoly_milnor(&z, &f) {
            Ok(cp) => {
                let jac = milnor_jacobian(&f);
                line.check(format!("μ {name}: {} vs {jac:?}", cp.mu), jac == Ok(cp.mu));
                let c0 = &cp.coeffs[0];
                line.check(format!("|Δ(0)| = 1 for {name}"), c0 == &1.into() || c0 == &(-1).into());
            }
            Err(e) => line.check(format!("charpoly {name}: {e}"), false),
        }
    }
    line.finish();
}

#[test]
fn criterion_08_arc_oracle() {
    let mut line = Line::new(8);
    let f = parse_curve(CUSP).unwrap();
    let count = |n, prime| {
        count_arcs_cone(
            &ArcQuery {
                f: &f,
                omega: (2, 3),
                n,
                prime,
            },
            DEFAULT_BUDGET,
        )
        .unwrap()
    };
    line.eq("n=6, q=5", count(6, 5), 156_250);
    line.eq("n=7, q=3", count(7, 3), 39_366);
    line.eq("ℓ > n", count(5, 5), 0);
    let start = Instant::now();
    let report = verify_cone_identities(&f, &[3, 5, 7], 7, DEFAULT_BUDGET).unwrap();
    let elapsed = start.elapsed();
    let failed: Vec<String> = report
        .cases
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("q={} Ω={:?} n={}", c.prime, c.omega, c.n))
        .collect();
    line.check(
        format!("cone identities ({} cases) {failed:?}", report.cases.len()),
        failed.is_empty() && !report.cases.is_empty(),
    );
    line.check(format!("runtime {elapsed:?} < {CONE_TIME:?}"), elapsed < CONE_TIME);
    line.finish();
}

#[test]
fn criterion_09_shear_invariance() {
    let mut line = Line::new(9);
    for text in [CUSP, TWO_PAIR, TOWER, TWO_FACE] {
        let f = parse_curve(text).unwrap();
        let sheared = f.shear_second(1);
        let flags = Flags::default();
        let before = analyze(text, &flags).unwrap();
        let after = analyze(&print_polynomial(&sheared), &flags).unwrap();
        let key = |r: &curve_milnor::frontend::AnalysisReport| {
            (
                r.zeta.as_ref().map(|z| z.text.clone()),
                r.charpoly.as_ref().map(|c| c.text.clone()),
                r.milnor_number,
            )
        };
        line.eq(text, key(&after), key(&before));
    }
    line.finish();
}

#[test]
fn criterion_10_spectrum() {
    let mut line = Line::new(10);
    for (a, b) in [(2u32, 3u32), (2, 5), (3, 4), (3, 5)] {
        let g = annotated_graph(
            &BiPoly::from_ints(&[((0, a), 1), ((b, 0), 1)]),
            &ResolveConfig::default(),
        )
        .unwrap();
        let sp = spectrum_partial(&normalize(&assemble_main1(&g)));
        let name = format!("y^{a}+x^{b}");
        line.eq(&format!("{name} count"), sp.count(), ((a - 1) * (b - 1)) as i64);
        line.check(
            format!("{name} in (0,2)"),
            sp.closed
                .keys()
                .all(|e| *e > Rational::from_integer(0.into()) && *e < Rational::from_integer(2.into()))
                && sp.closed.values().all(|&n| n > 0),
        );
        line.check(format!("{name} symmetric"), sp.is_symmetric());
        line.check(format!("{name} closed"), sp.residual.is_empty());
    }
    for text in ["(y^2 + x^3)^2", "x y^2", "(y^2 + x^3)^3 (y + x)"] {
        let r = analyze(text, &Flags::default()).unwrap();
        let sp = r.spectrum.unwrap();
        line.check(format!("{text} residual nonempty"), !sp.residual.is_empty());
        line.check(format!("{text} no milnor number"), r.milnor_number.is_none());
    }
    line.finish();
}
