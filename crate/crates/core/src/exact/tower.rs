//! Triangular algebraic extension towers over the rationals with dynamic evaluation.
//!
//! An element of a tower of depth `k` is stored as a flat coordinate vector in the
//! monomial basis `z_1^{e_1} ... z_k^{e_k}` with `e_i < deg_i`; `z_k` varies slowest, so the
//! element is a polynomial in `z_k` whose coefficients are consecutive depth-`k-1` chunks.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ExactError, Rational, SplitRequest};

/// Default bound on the total degree of a tower over the rationals.
pub const DEFAULT_MAX_TOWER_DEGREE: usize = 64;

/// Flat coordinates of a tower element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) Vec<Rational>);

impl Elem {
    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_literal_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in the base field.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.0[1..].iter().all(Zero::is_zero) {
            Some(&self.0[0])
        } else {
            None
        }
    }
}

/// One level of a tower: a generator and its monic defining polynomial over the previous level.
#[derive(Clone, Debug)]
pub struct Level {
    name: String,
    modulus: Vec<Elem>,
}

impl Level {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Coefficients, constant term first; the last one is the identity.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

#[derive(Debug)]
struct Inner {
    levels: Vec<Level>,
    dims: Vec<usize>,
    max_degree: usize,
}

/// A sequence of simple extensions `Q ⊂ Q[z_1]/(q_1) ⊂ ...`, shared by reference.
#[derive(Clone)]
pub struct Tower(Arc<Inner>);

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({})", self.describe())
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.depth() == other.depth()
                && self
                    .0
                    .levels
                    .iter()
                    .zip(&other.0.levels)
                    .all(|(a, b)| a.modulus == b.modulus))
    }
}

impl Eq for Tower {}

impl Default for Tower {
    fn default() -> Self {
        Tower::rational()
    }
}

impl Tower {
    /// The trivial tower (the rationals) with the default degree bound.
    pub fn rational() -> Tower {
        Tower::with_limit(DEFAULT_MAX_TOWER_DEGREE)
    }

    pub fn with_limit(max_degree: usize) -> Tower {
        Tower(Arc::new(Inner {
            levels: Vec::new(),
            dims: vec![1],
            max_degree: max_degree.max(1),
        }))
    }

    pub fn depth(&self) -> usize {
        self.0.levels.len()
    }

    /// Total degree over the rationals.
    pub fn degree(&self) -> usize {
        self.0.dims[self.depth()]
    }

    pub fn max_degree(&self) -> usize {
        self.0.max_degree
    }

    /// Dimension over the rationals of the sub-tower of the given depth.
    pub fn dim(&self, depth: usize) -> usize {
        self.0.dims[depth]
    }

    /// Level `k`, counted from 1.
    pub fn level(&self, k: usize) -> &Level {
        &self.0.levels[k - 1]
    }

    pub fn levels(&self) -> &[Level] {
        &self.0.levels
    }

    /// The sub-tower made of the first `depth` levels.
    pub fn truncate(&self, depth: usize) -> Tower {
        if depth == self.depth() {
            return self.clone();
        }
        Tower(Arc::new(Inner {
            levels: self.0.levels[..depth].to_vec(),
            dims: self.0.dims[..=depth].to_vec(),
            max_degree: self.0.max_degree,
        }))
    }

    /// True if `self` is `other` extended by zero or more levels.
    pub fn extends(&self, other: &Tower) -> bool {
        other.depth() <= self.depth()
            && other
                .0
                .levels
                .iter()
                .zip(&self.0.levels)
                .all(|(a, b)| a.modulus == b.modulus)
    }

    /// Extend by a monic polynomial over the current top level.
    pub fn push(&self, name: impl Into<String>, modulus: Vec<Elem>) -> Result<Tower, ExactError> {
        let d = self.depth();
        let deg = modulus.len().saturating_sub(1);
        if deg == 0 {
            return Err(ExactError::DegreeTooSmall);
        }
        if modulus.last() != Some(&self.one(d)) {
            return Err(ExactError::NotMonic);
        }
        let total = self.degree() * deg;
        if total > self.0.max_degree {
            return Err(ExactError::TowerDegreeExceeded {
                degree: total,
                limit: self.0.max_degree,
            });
        }
        let mut levels = self.0.levels.clone();
        levels.push(Level {
            name: name.into(),
            modulus,
        });
        let mut dims = self.0.dims.clone();
        dims.push(total);
        Ok(Tower(Arc::new(Inner {
            levels,
            dims,
            max_degree: self.0.max_degree,
        })))
    }

    /// Human-readable description, e.g. `Q[z1]/(z1^2 + 1)`.
    pub fn describe(&self) -> String {
        if self.depth() == 0 {
            return "Q".to_string();
        }
        let mut s = "Q".to_string();
        for (k, level) in self.0.levels.iter().enumerate() {
            let poly = self.render_poly(k, &level.modulus, &level.name);
            s.push_str(&format!("[{}]/({})", level.name, poly));
        }
        s
    }

    // ----- element construction -----

    pub fn zero(&self, depth: usize) -> Elem {
        Elem(vec![Rational::zero(); self.dim(depth)])
    }

    pub fn one(&self, depth: usize) -> Elem {
        self.from_rational(depth, Rational::one())
    }

    pub fn from_rational(&self, depth: usize, q: Rational) -> Elem {
        let mut v = vec![Rational::zero(); self.dim(depth)];
        v[0] = q;
        Elem(v)
    }

    pub fn from_int(&self, depth: usize, n: i64) -> Elem {
        self.from_rational(depth, Rational::from_integer(n.into()))
    }

    /// The generator `z_k` as an element of depth `k`.
    pub fn generator(&self, k: usize) -> Elem {
        let mut v = vec![Rational::zero(); self.dim(k)];
        if self.level(k).degree() == 1 {
            // Degree-one levels collapse the generator onto the base.
            let root = self.neg(k - 1, &self.level(k).modulus[0]);
            v[..self.dim(k - 1)].clone_from_slice(&root.0);
        } else {
            v[self.dim(k - 1)] = Rational::one();
        }
        Elem(v)
    }

    /// Embed an element of depth `from` into depth `to >= from`.
    pub fn embed(&self, e: &Elem, to: usize) -> Elem {
        let mut v = e.0.clone();
        v.resize(self.dim(to), Rational::zero());
        Elem(v)
    }

    /// Project an element of depth `to` or less living in `self` onto depth `to`,
    /// assuming it does not involve higher generators.
    fn chunks<'a>(&self, depth: usize, e: &'a Elem) -> impl Iterator<Item = &'a [Rational]> {
        e.0.chunks(self.dim(depth - 1))
    }

    fn chunk_elems(&self, depth: usize, e: &Elem) -> Vec<Elem> {
        self.chunks(depth, e).map(|c| Elem(c.to_vec())).collect()
    }

    fn flatten(&self, depth: usize, coeffs: &[Elem]) -> Elem {
        let deg = self.level(depth).degree();
        let mut v = Vec::with_capacity(self.dim(depth));
        for i in 0..deg {
            match coeffs.get(i) {
                Some(c) => v.extend_from_slice(&c.0),
                None => v.extend(std::iter::repeat_n(Rational::zero(), self.dim(depth - 1))),
            }
        }
        Elem(v)
    }

    // ----- ring operations -----

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, _depth: usize, a: &Elem) -> Elem {
        Elem(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &Elem, q: &Rational) -> Elem {
        Elem(a.0.iter().map(|x| x * q).collect())
    }

    pub fn mul(&self, depth: usize, a: &Elem, b: &Elem) -> Elem {
        if depth == 0 {
            return Elem(vec![&a.0[0] * &b.0[0]]);
        }
        if let Some(q) = a.as_rational() {
            return self.scale(b, q);
        }
        if let Some(q) = b.as_rational() {
            return self.scale(a, q);
        }
        let ac = self.chunk_elems(depth, a);
        let bc = self.chunk_elems(depth, b);
        let prod = poly_mul(self, depth - 1, &ac, &bc);
        self.reduce_poly(depth, prod)
    }

    /// Reduce a polynomial in `z_depth` (coefficients of depth `depth - 1`) modulo the level's modulus.
    pub fn reduce_poly(&self, depth: usize, mut p: Vec<Elem>) -> Elem {
        let q = &self.level(depth).modulus;
        let d = q.len() - 1;
        let below = depth - 1;
        while p.len() > d {
            let c = p.pop().expect("nonempty");
            if c.is_literal_zero() {
                continue;
            }
            let base = p.len() - d;
            for (j, qj) in q[..d].iter().enumerate() {
                let t = self.mul(below, &c, qj);
                p[base + j] = self.sub(&p[base + j], &t);
            }
        }
        self.flatten(depth, &p)
    }

    /// Multiplicative inverse; a zero divisor produces a split request at the level where it is detected.
    pub fn inv(&self, depth: usize, a: &Elem) -> Result<Elem, ExactError> {
        if a.is_literal_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if depth == 0 {
            return Ok(Elem(vec![a.0[0].recip()]));
        }
        if let Some(q) = a.as_rational() {
            return Ok(self.from_rational(depth, q.recip()));
        }
        let below = depth - 1;
        let mut ap = self.chunk_elems(depth, a);
        poly_trim(&mut ap);
        let (g, s) = poly_xgcd_mod(self, below, &ap, &self.level(depth).modulus)?;
        if g.len() > 1 {
            return Err(ExactError::Split(SplitRequest {
                level: depth,
                factor: g,
            }));
        }
        let (_, s) = poly_divrem_monic(self, below, &s, &self.level(depth).modulus);
        Ok(self.flatten(depth, &s))
    }

    /// Dynamic zero test: literal zero is zero; otherwise the element must be invertible.
    pub fn is_zero(&self, depth: usize, a: &Elem) -> Result<bool, ExactError> {
        if a.is_literal_zero() {
            return Ok(true);
        }
        self.inv(depth, a).map(|_| false)
    }

    pub fn pow(&self, depth: usize, a: &Elem, mut n: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one(depth);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(depth, &acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(depth, &base, &base);
            }
        }
        acc
    }

    // ----- case splitting -----

    /// Split the tower at `level` along a monic factor of that level's modulus.
    pub fn split(&self, req: &SplitRequest) -> Result<(Tower, Tower), ExactError> {
        let level = req.level;
        let below = level - 1;
        let modulus = &self.level(level).modulus;
        let (cof, rem) = poly_divrem_monic(self, below, modulus, &req.factor);
        if !rem.iter().all(Elem::is_literal_zero) {
            return Err(ExactError::InvalidSplit);
        }
        let base = self.truncate(below);
        let name = self.level(level).name.clone();
        let mut out = Vec::with_capacity(2);
        for piece in [req.factor.clone(), cof] {
            let mut child = base.push(name.clone(), piece)?;
            for k in level + 1..=self.depth() {
                let lvl = self.level(k);
                let moduli = lvl
                    .modulus
                    .iter()
                    .map(|c| self.project(&child, level, k - 1, c))
                    .collect();
                child = child.push(lvl.name.clone(), moduli)?;
            }
            out.push(child);
        }
        let second = out.pop().expect("two children");
        let first = out.pop().expect("two children");
        Ok((first, second))
    }

    /// Project an element of depth `depth` into a child obtained by splitting at `level`.
    pub fn project(&self, child: &Tower, level: usize, depth: usize, e: &Elem) -> Elem {
        if depth < level {
            return e.clone();
        }
        let parts = self.chunk_elems(depth, e);
        if depth == level {
            let (_, r) = poly_divrem_monic(child, level - 1, &parts, &child.level(level).modulus);
            return child.flatten(level, &r);
        }
        let projected: Vec<Elem> = parts.iter().map(|c| self.project(child, level, depth - 1, c)).collect();
        child.flatten(depth, &projected)
    }

    // ----- rendering -----

    /// Render an element of depth `depth` as a polynomial in the generator names.
    pub fn render(&self, depth: usize, e: &Elem) -> String {
        let mut terms: Vec<(Rational, String)> = Vec::new();
        for (idx, c) in e.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut rest = idx;
            let mut mono = Vec::new();
            for k in (1..=depth).rev() {
                let step = self.dim(k - 1);
                let ex = rest / step;
                rest %= step;
                if ex > 0 {
                    let name = &self.level(k).name;
                    mono.push(if ex == 1 { name.clone() } else { format!("{name}^{ex}") });
                }
            }
            mono.reverse();
            terms.push((c.clone(), mono.join("*")));
        }
        join_terms(&terms)
    }

    /// Render a polynomial with coefficients of depth `depth` in the variable `var`.
    pub fn render_poly(&self, depth: usize, coeffs: &[Elem], var: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in coeffs.iter().enumerate().rev() {
            if c.is_literal_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = self.render(depth, c);
            let single = c.as_rational().is_some();
            let piece = if mono.is_empty() {
                cs
            } else if single && cs == "1" {
                mono
            } else if single && cs == "-1" {
                format!("-{mono}")
            } else if single {
                format!("{cs}*{mono}")
            } else {
                format!("({cs})*{mono}")
            };
            parts.push(piece);
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    s.push_str(" - ");
                    s.push_str(rest);
                }
                None => {
                    s.push_str(" + ");
                    s.push_str(p);
                }
            }
        }
        s
    }
}

fn join_terms(terms: &[(Rational, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c < &Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            mono.clone()
        } else {
            format!("{abs}*{mono}")
        };
        match (i, neg) {
            (0, true) => s.push_str(&format!("-{body}")),
            (0, false) => s.push_str(&body),
            (_, true) => s.push_str(&format!(" - {body}")),
            (_, false) => s.push_str(&format!(" + {body}")),
        }
    }
    s
}

// ----- dense polynomial helpers over a fixed depth -----

pub(crate) fn poly_trim(p: &mut Vec<Elem>) {
    while p.last().is_some_and(Elem::is_literal_zero) {
        p.pop();
    }
}

pub(crate) fn poly_add(t: &Tower, a: &[Elem], b: &[Elem], depth: usize) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => t.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => t.zero(depth),
        });
    }
    poly_trim(&mut out);
    out
}

pub(crate) fn poly_sub(t: &Tower, a: &[Elem], b: &[Elem], depth: usize) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => t.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => t.neg(depth, y),
            (None, None) => t.zero(depth),
        });
    }
    poly_trim(&mut out);
    out
}

pub(crate) fn poly_mul(t: &Tower, depth: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![t.zero(depth); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_literal_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_literal_zero() {
                continue;
            }
            let p = t.mul(depth, x, y);
            out[i + j] = t.add(&out[i + j], &p);
        }
    }
    poly_trim(&mut out);
    out
}

pub(crate) fn poly_scale(t: &Tower, depth: usize, a: &[Elem], c: &Elem) -> Vec<Elem> {
    let mut out: Vec<Elem> = a.iter().map(|x| t.mul(depth, x, c)).collect();
    poly_trim(&mut out);
    out
}

/// Division by a monic polynomial.
pub(crate) fn poly_divrem_monic(t: &Tower, depth: usize, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    poly_trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![t.zero(depth); r.len() - db];
    while r.len() > db {
        let c = r.pop().expect("nonempty");
        if c.is_literal_zero() {
            continue;
        }
        let shift = r.len() - db;
        for (j, bj) in b[..db].iter().enumerate() {
            let p = t.mul(depth, &c, bj);
            r[shift + j] = t.sub(&r[shift + j], &p);
        }
        q[shift] = c;
    }
    poly_trim(&mut r);
    poly_trim(&mut q);
    (q, r)
}

/// Make a trimmed nonzero polynomial monic.
pub(crate) fn poly_monic(t: &Tower, depth: usize, a: &[Elem]) -> Result<Vec<Elem>, ExactError> {
    let lc = a.last().ok_or(ExactError::DivisionByZero)?;
    if *lc == t.one(depth) {
        return Ok(a.to_vec());
    }
    let inv = t.inv(depth, lc)?;
    Ok(poly_scale(t, depth, a, &inv))
}

/// Division with dynamic inversion of the divisor's leading coefficient.
pub(crate) fn poly_divrem(
    t: &Tower,
    depth: usize,
    a: &[Elem],
    b: &[Elem],
) -> Result<(Vec<Elem>, Vec<Elem>), ExactError> {
    let lc = b.last().ok_or(ExactError::DivisionByZero)?;
    let inv = t.inv(depth, lc)?;
    let bm = poly_scale(t, depth, b, &inv);
    let (q, r) = poly_divrem_monic(t, depth, a, &bm);
    Ok((poly_scale(t, depth, &q, &inv), r))
}

/// Monic gcd and the cofactor `s` with `s·a ≡ g (mod m)`, `m` monic.
pub(crate) fn poly_xgcd_mod(
    t: &Tower,
    depth: usize,
    a: &[Elem],
    m: &[Elem],
) -> Result<(Vec<Elem>, Vec<Elem>), ExactError> {
    let mut r0 = m.to_vec();
    let mut s0: Vec<Elem> = Vec::new();
    let mut r1 = a.to_vec();
    let mut s1 = vec![t.one(depth)];
    poly_trim(&mut r1);
    while !r1.is_empty() {
        let lc = r1.last().expect("nonempty").clone();
        let inv = t.inv(depth, &lc)?;
        r1 = poly_scale(t, depth, &r1, &inv);
        s1 = poly_scale(t, depth, &s1, &inv);
        let (q, r) = poly_divrem_monic(t, depth, &r0, &r1);
        let s = poly_sub(t, &s0, &poly_mul(t, depth, &q, &s1), depth);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    Ok((r0, s0))
}

/// Monic gcd under dynamic evaluation; the zero polynomial has gcd with itself equal to zero.
pub(crate) fn poly_gcd(t: &Tower, depth: usize, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>, ExactError> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    while !r1.is_empty() {
        let (_, r) = poly_divrem(t, depth, &r0, &r1)?;
        r0 = std::mem::replace(&mut r1, r);
    }
    if r0.is_empty() {
        return Ok(r0);
    }
    poly_monic(t, depth, &r0)
}

pub(crate) fn poly_derivative(t: &Tower, a: &[Elem]) -> Vec<Elem> {
    let mut out: Vec<Elem> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| t.scale(c, &Rational::from_integer((i as i64).into())))
        .collect();
    poly_trim(&mut out);
    out
}

pub(crate) fn poly_eval(t: &Tower, depth: usize, a: &[Elem], x: &Elem) -> Elem {
    let mut acc = t.zero(depth);
    for c in a.iter().rev() {
        acc = t.add(&t.mul(depth, &acc, x), c);
    }
    acc
}

/// `a(z + s)` by repeated synthetic division.
/// Coefficients of `f(v + s)` over the rationals, computed in integers.
fn rational_taylor_shift(f: &[Rational], s: &Rational) -> Vec<Rational> {
    let n = f.len();
    if n == 0 {
        return Vec::new();
    }
    let den = f.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let (p, q) = (s.numer(), s.denom());
    // g(w) = den * q^(n-1) * f(w / q), so f(v + p/q) = g(q v + p) / (den * q^(n-1)).
    let mut qpow = vec![BigInt::one(); n];
    for j in 1..n {
        qpow[j] = &qpow[j - 1] * q;
    }
    let mut g: Vec<BigInt> = f
        .iter()
        .enumerate()
        .map(|(j, c)| (c * Rational::from_integer(&den * &qpow[n - 1 - j])).to_integer())
        .collect();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &g[j + 1] * p;
            g[j] += t;
        }
    }
    let scale = &den * &qpow[n - 1];
    g.into_iter()
        .enumerate()
        .map(|(k, c)| Rational::new(c * &qpow[k], scale.clone()))
        .collect()
}

pub(crate) fn poly_taylor_shift(t: &Tower, depth: usize, a: &[Elem], s: &Elem) -> Vec<Elem> {
    let mut c = a.to_vec();
    let n = c.len();
    if s.is_literal_zero() {
        return c;
    }
    if let Some(r) = s.as_rational() {
        let dim = t.dim(depth);
        let cols: Vec<Vec<Rational>> = (0..dim)
            .map(|k| {
                rational_taylor_shift(
                    &c.iter()
                        .map(|e| e.0.get(k).cloned().unwrap_or_default())
                        .collect::<Vec<_>>(),
                    r,
                )
            })
            .collect();
        let mut out: Vec<Elem> = (0..n)
            .map(|j| Elem(cols.iter().map(|col| col[j].clone()).collect()))
            .collect();
        poly_trim(&mut out);
        return out;
    }
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let p = t.mul(depth, &c[j + 1], s);
            c[j] = t.add(&c[j], &p);
        }
    }
    poly_trim(&mut c);
    c
}
