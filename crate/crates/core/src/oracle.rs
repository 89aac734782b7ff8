//! Brute-force oracles: Jacobian Milnor numbers, face point counts, and truncated arc counts.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{BiPoly, Rational};
use crate::newton::{cone_decomposition, newton_faces, ConeKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("the singularity is not isolated within jets of order {0}")]
    NonIsolated(u32),
    #[error("prime {0} does not reduce the coefficients")]
    BadPrime(u64),
    #[error("enumeration budget of {0} operations exceeded")]
    BudgetExceeded(u64),
    #[error("coefficients must be rational")]
    NonRational,
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

pub const DEFAULT_BUDGET: u64 = 100_000_000;

type Terms = Vec<((u32, u32), Rational)>;

fn rational_terms(f: &BiPoly) -> Result<Terms, OracleError> {
    f.rational_terms().ok_or(OracleError::NonRational)
}

/// Milnor number at the origin by elimination on truncated jets of the Jacobian ideal.
///
/// `d_k = dim O / (J + m^k)` is read off a row echelon form with lowest-degree pivots;
/// the first `k` with `d_k = d_{k+1}` gives `m^k ⊂ J` and `μ = d_k`.
pub fn milnor_jacobian(f: &BiPoly) -> Result<u64, OracleError> {
    let terms = rational_terms(f)?;
    let deg = f.total_degree();
    let bound = 2 * deg + 4;
    let fx = derivative(&terms, true);
    let fy = derivative(&terms, false);
    let mut prev: Option<u64> = None;
    for k in 1..=bound {
        let d = colength(&fx, &fy, k);
        if prev == Some(d) {
            return Ok(d);
        }
        prev = Some(d);
    }
    Err(OracleError::NonIsolated(bound))
}

fn derivative(terms: &[((u32, u32), Rational)], first: bool) -> Vec<((u32, u32), Rational)> {
    terms
        .iter()
        .filter_map(|&((a, b), ref c)| {
            let e = if first { a } else { b };
            (e > 0).then(|| {
                let exp = if first { (a - 1, b) } else { (a, b - 1) };
                (exp, c * Rational::from_integer(e.into()))
            })
        })
        .collect()
}

/// `dim O / (J + m^k)`.
fn colength(fx: &[((u32, u32), Rational)], fy: &[((u32, u32), Rational)], k: u32) -> u64 {
    // Columns ordered by total degree, then by the first exponent.
    let key = |(a, b): (u32, u32)| (a + b, a);
    let mut pivots: BTreeMap<(u32, u32), BTreeMap<(u32, u32), Rational>> = BTreeMap::new();
    for deg in 0..k {
        for i in 0..=deg {
            let mult = (i, deg - i);
            for g in [fx, fy] {
                let mut row: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
                for ((a, b), c) in g {
                    let e = (a + mult.0, b + mult.1);
                    if e.0 + e.1 < k {
                        *row.entry(key(e)).or_insert_with(Rational::zero) += c;
                    }
                }
                row.retain(|_, c| !c.is_zero());
                while let Some((&col, lead)) = row.iter().next() {
                    match pivots.get(&col) {
                        Some(p) => {
                            let lead = lead.clone();
                            for (pc, pv) in p {
                                let v = row.entry(*pc).or_insert_with(Rational::zero);
                                *v -= &lead * pv;
                                if v.is_zero() {
                                    row.remove(pc);
                                }
                            }
                        }
                        None => {
                            let inv = lead.recip();
                            let normalized = row.into_iter().map(|(c, v)| (c, v * &inv)).collect();
                            pivots.insert(col, normalized);
                            break;
                        }
                    }
                }
            }
        }
    }
    let monomials = (k as u64) * (k as u64 + 1) / 2;
    monomials - pivots.len() as u64
}

/// A polynomial with coefficients reduced modulo a prime.
#[derive(Clone, Debug)]
struct ModPoly {
    q: u64,
    terms: Vec<((u32, u32), u64)>,
}

fn reduce_rational(c: &Rational, q: u64) -> Result<u64, OracleError> {
    let qb = BigInt::from(q);
    let num = c.numer().mod_floor(&qb).to_u64().expect("reduced");
    let den = c.denom().mod_floor(&qb).to_u64().expect("reduced");
    if den == 0 {
        return Err(OracleError::BadPrime(q));
    }
    Ok(num * inv_mod(den, q) % q)
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

fn pow_mod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, q);
        }
        a = mul_mod(a, a, q);
        e >>= 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

impl ModPoly {
    fn new(f: &BiPoly, q: u64) -> Result<Self, OracleError> {
        if !is_prime(q) {
            return Err(OracleError::InvalidQuery(format!("{q} is not prime")));
        }
        let mut terms = Vec::new();
        for (e, c) in rational_terms(f)? {
            let r = reduce_rational(&c, q)?;
            if r != 0 {
                terms.push((e, r));
            }
        }
        Ok(ModPoly { q, terms })
    }

    fn eval(&self, x: u64, y: u64) -> u64 {
        let q = self.q;
        self.terms.iter().fold(0, |acc, &((a, b), c)| {
            (acc + mul_mod(c, mul_mod(pow_mod(x, a as u64, q), pow_mod(y, b as u64, q), q), q)) % q
        })
    }

    fn partial(&self, first: bool) -> ModPoly {
        let q = self.q;
        let terms = self
            .terms
            .iter()
            .filter_map(|&((a, b), c)| {
                let e = if first { a } else { b };
                let c = mul_mod(c, e as u64 % q, q);
                (e > 0 && c != 0).then(|| (if first { (a - 1, b) } else { (a, b - 1) }, c))
            })
            .collect();
        ModPoly { q, terms }
    }

    /// Coefficients of `f(φ(t), ψ(t))` up to `t^upto`.
    fn eval_series(&self, phi: &[u64], psi: &[u64], upto: usize) -> Vec<u64> {
        let q = self.q;
        let len = upto + 1;
        let max_a = self.terms.iter().map(|t| t.0 .0).max().unwrap_or(0) as usize;
        let max_b = self.terms.iter().map(|t| t.0 .1).max().unwrap_or(0) as usize;
        let powers = |s: &[u64], n: usize| -> Vec<Vec<u64>> {
            let mut out = vec![one_series(len)];
            for k in 1..=n {
                let next = series_mul(&out[k - 1], s, len, q);
                out.push(next);
            }
            out
        };
        let pp = powers(phi, max_a);
        let sp = powers(psi, max_b);
        let mut acc = vec![0u64; len];
        for &((a, b), c) in &self.terms {
            let prod = series_mul(&pp[a as usize], &sp[b as usize], len, q);
            for (s, p) in acc.iter_mut().zip(prod) {
                *s = (*s + mul_mod(c, p, q)) % q;
            }
        }
        acc
    }
}

fn one_series(len: usize) -> Vec<u64> {
    let mut v = vec![0; len];
    v[0] = 1;
    v
}

fn series_mul(a: &[u64], b: &[u64], len: usize, q: u64) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            if y != 0 {
                out[i + j] = (out[i + j] + mul_mod(x, y, q)) % q;
            }
        }
    }
    out
}

fn binomial_mod(n: u32, k: u32, q: u64) -> u64 {
    // Lucas' theorem.
    let (mut n, mut k) = (n as u64, k as u64);
    let mut r = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % q, k % q);
        if ki > ni {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..ki {
            c = mul_mod(c, (ni - i) % q, q);
            c = mul_mod(c, inv_mod((i + 1) % q, q), q);
        }
        r = mul_mod(r, c, q);
        n /= q;
        k /= q;
    }
    r
}

/// `#{(u, v) ∈ (F_q^*)^2 : f(u, v) = 1}`.
pub fn count_face_points(face_fn: &BiPoly, q: u64) -> Result<u64, OracleError> {
    let f = ModPoly::new(face_fn, q)?;
    Ok((1..q)
        .into_par_iter()
        .map(|u| (1..q).filter(|&v| f.eval(u, v) == 1).count() as u64)
        .sum())
}

/// Truncated arcs `(φ, ψ)` of exact orders `Ω = (p, q)` with coefficients up to `t^n`.
#[derive(Clone, Debug)]
pub struct ArcQuery<'a> {
    pub f: &'a BiPoly,
    pub omega: (u32, u32),
    pub n: u32,
    pub prime: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Var {
    Phi(u32),
    Psi(u32),
}

struct Plan {
    f: ModPoly,
    /// Enumerated variables with the lowest `t`-degree each one can influence.
    vars: Vec<(Var, u32)>,
    /// Product of the ranges of the variables that cannot influence `t^n`.
    free_factor: u128,
    n: u32,
}

fn validate(query: &ArcQuery) -> Result<(), OracleError> {
    let (p, q) = query.omega;
    if p == 0 || q == 0 {
        return Err(OracleError::InvalidQuery("orders must be positive".into()));
    }
    if p > query.n || q > query.n {
        return Err(OracleError::InvalidQuery("orders exceed the truncation level".into()));
    }
    Ok(())
}

impl Plan {
    fn new(query: &ArcQuery) -> Result<Self, OracleError> {
        validate(query)?;
        let f = ModPoly::new(query.f, query.prime)?;
        let (p, q) = query.omega;
        let n = query.n;
        let pr = query.prime;
        // Lowest degree a change of the coefficient of t^i can reach, via Hasse derivatives.
        let influence = |i: u32, first: bool| -> u32 {
            let mut best = u32::MAX;
            for &((a, b), _) in &f.terms {
                let e = if first { a } else { b };
                for k in 1..=e {
                    if binomial_mod(e, k, pr) == 0 {
                        continue;
                    }
                    let rest = if first {
                        (a - k) * p + b * q
                    } else {
                        a * p + (b - k) * q
                    };
                    best = best.min(k * i + rest);
                }
            }
            best
        };
        let mut vars = Vec::new();
        let mut free_factor: u128 = 1;
        for (first, lo) in [(true, p), (false, q)] {
            for i in lo..=n {
                let inf = influence(i, first);
                let var = if first { Var::Phi(i) } else { Var::Psi(i) };
                if inf > n {
                    free_factor *= if i == lo { pr as u128 - 1 } else { pr as u128 };
                } else {
                    vars.push((var, inf));
                }
            }
        }
        vars.sort_by_key(|&(v, inf)| {
            let (side, idx) = match v {
                Var::Phi(i) => (0, i),
                Var::Psi(i) => (1, i),
            };
            (inf, idx, side)
        });
        Ok(Plan {
            f,
            vars,
            free_factor,
            n,
        })
    }

    fn leading(&self, v: Var, omega: (u32, u32)) -> bool {
        matches!(v, Var::Phi(i) if i == omega.0) || matches!(v, Var::Psi(j) if j == omega.1)
    }
}

struct Search<'a> {
    plan: &'a Plan,
    omega: (u32, u32),
    budget: u64,
    ops: &'a AtomicU64,
}

impl Search<'_> {
    fn charge(&self, amount: u64) -> Result<(), OracleError> {
        let used = self.ops.fetch_add(amount, Ordering::Relaxed) + amount;
        if used > self.budget {
            Err(OracleError::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    /// Count completions after assigning `vars[..pos]`; `checked` is the first unchecked degree.
    fn run(&self, pos: usize, phi: &mut [u64], psi: &mut [u64], checked: u32) -> Result<u64, OracleError> {
        let plan = self.plan;
        let n = plan.n;
        let horizon = plan.vars.get(pos).map_or(n + 1, |v| v.1.min(n + 1));
        if horizon > checked {
            self.charge((plan.f.terms.len() as u64 + 1) * (n as u64 + 1))?;
            let series = plan.f.eval_series(phi, psi, (horizon - 1) as usize);
            for m in checked..horizon {
                let want = u64::from(m == n);
                if series[m as usize] != want {
                    return Ok(0);
                }
            }
        }
        let checked = checked.max(horizon);
        let Some(&(var, _)) = plan.vars.get(pos) else {
            return Ok(1);
        };
        let lo = u64::from(plan.leading(var, self.omega));
        let mut total = 0u64;
        for c in lo..plan.f.q {
            set(var, phi, psi, c);
            total += self.run(pos + 1, phi, psi, checked)?;
        }
        set(var, phi, psi, 0);
        Ok(total)
    }
}

fn set(v: Var, phi: &mut [u64], psi: &mut [u64], c: u64) {
    match v {
        Var::Phi(i) => phi[i as usize] = c,
        Var::Psi(j) => psi[j as usize] = c,
    }
}

/// Exact count of `(φ, ψ)` with `f(φ, ψ) ≡ t^n mod t^{n+1}`, by pruned backtracking.
///
/// Coefficients that cannot reach `t^n` are factored out; the budget bounds the number of
/// coefficient operations spent on series evaluation.
pub fn count_arcs_cone(query: &ArcQuery, budget: u64) -> Result<u128, OracleError> {
    let plan = Plan::new(query)?;
    let ops = AtomicU64::new(0);
    let len = query.n as usize + 1;
    let search = Search {
        plan: &plan,
        omega: query.omega,
        budget,
        ops: &ops,
    };
    let (mut phi, mut psi) = (vec![0; len], vec![0; len]);
    let enumerated = match plan.vars.first() {
        None => search.run(0, &mut phi, &mut psi, 0)?,
        Some(&(var, first_influence)) => {
            // Degrees below the first influence do not depend on any coefficient.
            let start = first_influence.min(query.n + 1);
            let s = plan.f.eval_series(&phi, &psi, query.n as usize);
            if (0..start).any(|m| s[m as usize] != u64::from(m == query.n)) {
                0
            } else {
                let lo = u64::from(plan.leading(var, query.omega));
                let parts: Result<Vec<u64>, OracleError> = (lo..query.prime)
                    .into_par_iter()
                    .map(|c| {
                        let (mut phi, mut psi) = (vec![0; len], vec![0; len]);
                        set(var, &mut phi, &mut psi, c);
                        search.run(1, &mut phi, &mut psi, start)
                    })
                    .collect();
                parts?.into_iter().sum()
            }
        }
    };
    Ok(enumerated as u128 * plan.free_factor)
}

/// Reference enumerator over the full coefficient domain.
pub fn count_arcs_naive(query: &ArcQuery, budget: u64) -> Result<u128, OracleError> {
    validate(query)?;
    let f = ModPoly::new(query.f, query.prime)?;
    let (p, q) = query.omega;
    let n = query.n;
    let pr = query.prime;
    let vars: Vec<Var> = (p..=n).map(Var::Phi).chain((q..=n).map(Var::Psi)).collect();
    let size = (pr as f64).powi(vars.len() as i32);
    if size > budget as f64 {
        return Err(OracleError::BudgetExceeded(budget));
    }
    let len = n as usize + 1;
    let (mut phi, mut psi) = (vec![0u64; len], vec![0u64; len]);
    let mut count = 0u128;
    let mut digits = vec![0u64; vars.len()];
    let lows: Vec<u64> = vars
        .iter()
        .map(|v| u64::from(matches!(v, Var::Phi(i) if *i == p) || matches!(v, Var::Psi(j) if *j == q)))
        .collect();
    digits.copy_from_slice(&lows);
    loop {
        for (v, &d) in vars.iter().zip(&digits) {
            set(*v, &mut phi, &mut psi, d);
        }
        let s = f.eval_series(&phi, &psi, n as usize);
        if (0..=n).all(|m| s[m as usize] == u64::from(m == n)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(count);
            }
            digits[k] += 1;
            if digits[k] < pr {
                break;
            }
            digits[k] = lows[k];
            k += 1;
        }
    }
}

/// Terms of `f` of minimal `Ω`-weighted order.
pub fn initial_form(f: &BiPoly, omega: (u32, u32)) -> BiPoly {
    let w = |(a, b): (u32, u32)| a as u64 * omega.0 as u64 + b as u64 * omega.1 as u64;
    let ell = f.support().map(w).min().unwrap_or(0);
    BiPoly::from_terms(
        f.tower(),
        f.terms().filter(|(e, _)| w(**e) == ell).map(|(e, c)| (*e, c.clone())),
    )
}

/// Torus zeros of `g` and whether all of them are smooth.
fn torus_zeros(g: &BiPoly, q: u64) -> Result<(u64, bool), OracleError> {
    let f = ModPoly::new(g, q)?;
    let (gx, gy) = (f.partial(true), f.partial(false));
    let mut count = 0;
    let mut smooth = true;
    for u in 1..q {
        for v in 1..q {
            if f.eval(u, v) == 0 {
                count += 1;
                smooth &= gx.eval(u, v) != 0 || gy.eval(u, v) != 0;
            }
        }
    }
    Ok((count, smooth))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeCase {
    pub prime: u64,
    pub omega: (u32, u32),
    pub n: u32,
    pub cone: String,
    pub ell: u64,
    pub predicted: u128,
    pub counted: u128,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub cases: Vec<ConeCase>,
    /// Face-cone cases above the face level with singular torus zeros, where no prediction is made.
    pub skipped: Vec<(u64, (u32, u32), u32)>,
}

impl ConeReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

/// Check the finite-level cone identities for every `Ω` with `ℓ(Ω) ≤ n_max`.
///
/// At `n = ℓ(Ω)` the count is the torus count of the initial form times `q^{2n − |Ω|}`.
/// Above it, vertex cones give zero and face cones give `N_0 · q^{2n − |Ω| − (n − ℓ)}`
/// when all `N_0` torus zeros of the face function are smooth. One level below `ℓ` gives zero.
pub fn verify_cone_identities(f: &BiPoly, primes: &[u64], n_max: u32, budget: u64) -> Result<ConeReport, OracleError> {
    let faces = newton_faces(f).map_err(|e| OracleError::InvalidQuery(e.to_string()))?;
    let cones = cone_decomposition(&faces);
    let mut jobs = Vec::new();
    let mut skipped = Vec::new();
    for &prime in primes {
        for p in 1..=n_max {
            for q in 1..=n_max {
                let ell = cones.ell(p as u64, q as u64);
                if ell > n_max as u64 {
                    continue;
                }
                let kind = cones.classify(p as u64, q as u64);
                let init = initial_form(f, (p, q));
                let lead_count = count_face_points(&init, prime)? as u128;
                let (zeros, smooth) = torus_zeros(&init, prime)?;
                let ell32 = ell as u32;
                let low = p.max(q);
                for n in ell32.saturating_sub(1).max(low)..=n_max {
                    let free = 2 * n - p - q;
                    let pw = |e: u32| (prime as u128).pow(e);
                    let predicted = if n < ell32 {
                        0
                    } else if n == ell32 {
                        lead_count * pw(free)
                    } else {
                        match kind {
                            ConeKind::Vertex(_) => 0,
                            ConeKind::Face(_) if smooth => zeros as u128 * pw(free - (n - ell32)),
                            ConeKind::Face(_) => {
                                skipped.push((prime, (p, q), n));
                                continue;
                            }
                        }
                    };
                    let cone = match kind {
                        ConeKind::Face(i) => format!("face {}", i + 1),
                        ConeKind::Vertex(i) => format!("vertex {i}"),
                    };
                    jobs.push((prime, (p, q), n, cone, ell, predicted));
                }
            }
        }
    }
    let cases: Result<Vec<ConeCase>, OracleError> = jobs
        .into_par_iter()
        .map(|(prime, omega, n, cone, ell, predicted)| {
            let counted = count_arcs_cone(&ArcQuery { f, omega, n, prime }, budget)?;
            Ok(ConeCase {
                prime,
                omega,
                n,
                cone,
                ell,
                predicted,
                counted,
                pass: counted == predicted,
            })
        })
        .collect();
    let mut cases = cases?;
    cases.sort_by_key(|a| (a.prime, a.omega, a.n));
    let skipped: BTreeSet<_> = skipped.into_iter().collect();
    Ok(ConeReport {
        cases,
        skipped: skipped.into_iter().collect(),
    })
}
