//! Realizations: monodromy zeta function, characteristic polynomial, Milnor number, partial spectrum.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{is_locally_reduced, BiPoly, Rational};
use crate::graph::{GraphKind, ResolutionGraph};
use crate::gring::{Generator, MotClass};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("the germ is not reduced")]
    NonReduced,
    #[error("(1 - t) times the zeta function is not a monodromy polynomial")]
    NonPolynomial,
    #[error("no realization for generator {0}")]
    UnrealizableGenerator(String),
}

/// `∏_d (1 − t^d)^{e_d}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZetaFn {
    pub factors: BTreeMap<u64, i64>,
}

impl ZetaFn {
    pub fn one() -> Self {
        ZetaFn::default()
    }

    pub fn factor(d: u64, e: i64) -> Self {
        let mut z = ZetaFn::one();
        z.mul_factor(d, e);
        z
    }

    pub fn mul_factor(&mut self, d: u64, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.factors.entry(d).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&d);
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        ZetaFn {
            factors: self
                .factors
                .iter()
                .filter(|_| k != 0)
                .map(|(&d, &e)| (d, e * k))
                .collect(),
        }
    }

    /// Numerator and denominator as dense integer polynomials, constant term first.
    pub fn fraction(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut num = vec![BigInt::one()];
        let mut den = vec![BigInt::one()];
        for (&d, &e) in &self.factors {
            let target = if e > 0 { &mut num } else { &mut den };
            for _ in 0..e.unsigned_abs() {
                *target = mul_one_minus(target, d as usize);
            }
        }
        (num, den)
    }
}

/// `p · (1 − t^d)`.
fn mul_one_minus(p: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + d];
    for (i, c) in p.iter().enumerate() {
        out[i] += c;
        out[i + d] -= c;
    }
    out
}

fn factor_str(d: u64, e: u64) -> String {
    let base = if d == 1 {
        "(1-t)".to_string()
    } else {
        format!("(1-t^{d})")
    };
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

impl fmt::Display for ZetaFn {
    /// Rational-function form, e.g. `(1-t^6)/((1-t^2)(1-t^3))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(&d, &e)| factor_str(d, e as u64))
            .collect();
        let den: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(&d, &e)| factor_str(d, e.unsigned_abs()))
            .collect();
        let num_s = if num.is_empty() { "1".to_string() } else { num.concat() };
        match den.len() {
            0 => f.write_str(&num_s),
            1 if !den[0].contains(")^") => {
                write!(f, "{num_s}/{}", den[0])
            }
            _ => write!(f, "{num_s}/({})", den.concat()),
        }
    }
}

fn generator_zeta(g: &Generator) -> ZetaFn {
    match g {
        Generator::One => ZetaFn::factor(1, -1),
        Generator::Mu(n) => ZetaFn::factor(*n, -1),
        Generator::Monomial(..) => ZetaFn::one(),
        Generator::TorusFace(d) => ZetaFn::factor(d.weighted_degree(), d.r() as i64),
        Generator::AffineFace(d) => {
            let mut z = ZetaFn::factor(d.weighted_degree(), d.r() as i64);
            for e in [d.u_axis(), d.v_axis()].into_iter().flatten() {
                z.mul_factor(e, -1);
            }
            z
        }
    }
}

/// Equivariant Euler characteristic realization, additive to multiplicative.
pub fn zeta_of_class(c: &MotClass) -> Result<ZetaFn, RealizeError> {
    let mut z = ZetaFn::one();
    for t in &c.terms {
        if let Generator::TorusFace(d) | Generator::AffineFace(d) = &t.generator {
            if d.weighted_degree() == 0 {
                return Err(RealizeError::UnrealizableGenerator(t.generator.to_string()));
            }
        }
        z = z * &generator_zeta(&t.generator).pow(t.coefficient);
    }
    Ok(z)
}

/// Product formula over the vertices of `G_s`.
pub fn zeta_of_graph(g: &ResolutionGraph) -> ZetaFn {
    if let GraphKind::Monomial { exponent } = g.kind {
        return ZetaFn::factor(exponent, -1);
    }
    let mut z = ZetaFn::one();
    for b in &g.bamboos {
        if let Some(q) = b.q_left_multiplicity {
            z.mul_factor(q, -1);
        }
        z.mul_factor(b.q_right(), -1);
        for v in &b.vertices {
            z.mul_factor(v.m(), v.r() as i64);
        }
    }
    z
}

/// Characteristic polynomial `Δ = (1 − t)·ζ` and its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    /// Integer coefficients, constant term first.
    pub coeffs: Vec<BigInt>,
    pub mu: u64,
}

impl CharPoly {
    /// Descending powers, e.g. `t^2 - t + 1`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if mono.is_empty() || !abs.is_one() {
                s.push_str(&abs.to_string());
            }
            s.push_str(&mono);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

pub fn charpoly_milnor(z: &ZetaFn, f: &BiPoly) -> Result<CharPoly, RealizeError> {
    if !is_locally_reduced(f) {
        return Err(RealizeError::NonReduced);
    }
    let z = z.clone() * &ZetaFn::factor(1, 1);
    let (num, den) = z.fraction();
    let q = divide_exact(&num, &den).ok_or(RealizeError::NonPolynomial)?;
    if q.first().map(|c| c.abs().is_one()) != Some(true) {
        return Err(RealizeError::NonPolynomial);
    }
    let mu = (q.len() - 1) as u64;
    Ok(CharPoly { coeffs: q, mu })
}

/// Exact quotient of integer polynomials whose divisor has constant term one.
fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let trim = |p: &[BigInt]| {
        let mut v = p.to_vec();
        while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let (num, den) = (trim(num), trim(den));
    if den.len() > num.len() {
        return None;
    }
    let lead = den.last()?.clone();
    let mut rem = num.clone();
    let mut q = vec![BigInt::zero(); num.len() - den.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &rem[k + den.len() - 1];
        if !(c % &lead).is_zero() {
            return None;
        }
        let c = c / &lead;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        q[k] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(&q))
}

/// Fractional Laurent polynomial with the unevaluated remainder.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecPoly {
    pub closed: BTreeMap<Rational, i64>,
    /// Descriptions of terms with no closed form, with their coefficients.
    pub residual: Vec<String>,
}

impl SpecPoly {
    fn add(&mut self, alpha: Rational, n: i64) {
        let slot = self.closed.entry(alpha.clone()).or_insert(0);
        *slot += n;
        if *slot == 0 {
            self.closed.remove(&alpha);
        }
    }

    /// Total count of spectral numbers with multiplicity.
    pub fn count(&self) -> i64 {
        self.closed.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        let two = Rational::from_integer(2.into());
        self.closed.iter().all(|(a, n)| self.closed.get(&(&two - a)) == Some(n))
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (a, n) in &self.closed {
            let neg = *n < 0;
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if n.unsigned_abs() != 1 {
                s.push_str(&n.unsigned_abs().to_string());
            }
            if a.is_integer() {
                s.push_str(&format!("t^{a}"));
            } else {
                s.push_str(&format!("t^({a})"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// `(exponent, multiplicity)` pairs for a generator with a known spectrum.
fn generator_spectrum(g: &Generator) -> Option<Vec<(Rational, i64)>> {
    let mu = |n: u64| -> Vec<(Rational, i64)> {
        (0..n)
            .map(|k| (Rational::new((k as i64).into(), (n as i64).into()), 1))
            .collect()
    };
    match g {
        Generator::One => Some(vec![(Rational::zero(), 1)]),
        Generator::Mu(n) => Some(mu(*n)),
        Generator::Monomial(a, b) => {
            let n = num_integer::Integer::gcd(a, b);
            let mut out: Vec<(Rational, i64)> = mu(n).into_iter().map(|(e, c)| (e + Rational::one(), c)).collect();
            out.extend(mu(n).into_iter().map(|(e, c)| (e, -c)));
            Some(out)
        }
        Generator::AffineFace(d) if d.is_brieskorn() => {
            let (a, b) = (d.weight.a as i64, d.weight.b as i64);
            let mut out = Vec::new();
            for i in 1..a {
                for j in 1..b {
                    out.push((Rational::new((i * b + j * a).into(), (a * b).into()), 1));
                }
            }
            out.push((Rational::one(), 1));
            out.push((Rational::zero(), -1));
            Some(out)
        }
        _ => None,
    }
}

/// Spectrum of the generators with closed forms; the rest is reported as residual.
pub fn spectrum_partial(c: &MotClass) -> SpecPoly {
    let mut sp = SpecPoly::default();
    for t in &c.terms {
        match generator_spectrum(&t.generator) {
            Some(parts) => {
                let shift = Rational::from_integer(t.l_exponent.into());
                for (e, n) in parts {
                    sp.add(e + &shift, n * t.coefficient);
                }
            }
            None => sp.residual.push(MotClass { terms: vec![t.clone()] }.to_string()),
        }
    }
    sp
}

impl std::ops::Mul<&ZetaFn> for ZetaFn {
    type Output = ZetaFn;

    fn mul(mut self, o: &ZetaFn) -> ZetaFn {
        for (&d, &e) in &o.factors {
            self.mul_factor(d, e);
        }
        self
    }
}
