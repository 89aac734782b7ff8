use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::tower::poly_taylor_shift;
use super::{Elem, ExactError, Rational, Tower, TowerScalar, UPoly};

/// Sparse bivariate polynomial over a tower; keys are `(first, second)` exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    tower: Tower,
    terms: BTreeMap<(u32, u32), Elem>,
}

fn binomial_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..n {
        let next = &row[k as usize] * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

impl BiPoly {
    pub fn zero(tower: &Tower) -> Self {
        BiPoly {
            tower: tower.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(tower: &Tower, terms: impl IntoIterator<Item = ((u32, u32), Elem)>) -> Self {
        let mut p = BiPoly::zero(tower);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Build from integer or rational coefficients over the rationals.
    pub fn from_rationals(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let t = Tower::rational();
        BiPoly::from_terms(&t, terms.into_iter().map(|(k, q)| (k, t.from_rational(0, q))))
    }

    pub fn from_ints(terms: &[((u32, u32), i64)]) -> Self {
        BiPoly::from_rationals(terms.iter().map(|&(k, c)| (k, Rational::from_integer(c.into()))))
    }

    pub fn monomial(tower: &Tower, exp: (u32, u32), c: Elem) -> Self {
        BiPoly::from_terms(tower, [(exp, c)])
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    fn depth(&self) -> usize {
        self.tower.depth()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Elem)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff_elem(&self, exp: (u32, u32)) -> Option<&Elem> {
        self.terms.get(&exp)
    }

    pub fn coeff(&self, exp: (u32, u32)) -> TowerScalar {
        let d = self.depth();
        TowerScalar::new(
            &self.tower,
            self.terms.get(&exp).cloned().unwrap_or_else(|| self.tower.zero(d)),
        )
    }

    pub fn add_term(&mut self, exp: (u32, u32), c: Elem) {
        if c.is_literal_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(old) => {
                let s = self.tower.add(old, &c);
                if s.is_literal_zero() {
                    self.terms.remove(&exp);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        let d = self.depth();
        BiPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, self.tower.neg(d, c))).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.depth();
        let mut p = BiPoly::zero(&self.tower);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                p.add_term((a1 + a2, b1 + b2), self.tower.mul(d, c1, c2));
            }
        }
        p
    }

    pub fn scale(&self, c: &Elem) -> Self {
        let d = self.depth();
        BiPoly::from_terms(
            &self.tower,
            self.terms.iter().map(|(k, x)| (*k, self.tower.mul(d, x, c))),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let d = self.depth();
        let mut acc = BiPoly::monomial(&self.tower, (0, 0), self.tower.one(d));
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn constant_term(&self) -> Option<&Elem> {
        self.terms.get(&(0, 0))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    /// Largest power of the first variable dividing the polynomial.
    pub fn first_order(&self) -> u32 {
        self.terms.keys().map(|k| k.0).min().unwrap_or(0)
    }

    /// Largest power of the second variable dividing the polynomial.
    pub fn second_order(&self) -> u32 {
        self.terms.keys().map(|k| k.1).min().unwrap_or(0)
    }

    /// Apply an exponent map `x^α y^β ↦ u^{·} v^{·}` term by term.
    pub fn map_exponents(&self, f: impl Fn(u32, u32) -> (u64, u64)) -> Result<Self, ExactError> {
        let mut p = BiPoly::zero(&self.tower);
        for (&(a, b), c) in &self.terms {
            let (u, v) = f(a, b);
            let u = u32::try_from(u).map_err(|_| ExactError::ExponentOverflow)?;
            let v = u32::try_from(v).map_err(|_| ExactError::ExponentOverflow)?;
            p.add_term((u, v), c.clone());
        }
        Ok(p)
    }

    /// Divide by `first^k`; `None` unless exact.
    pub fn div_first_power(&self, k: u32) -> Option<Self> {
        if self.terms.keys().any(|(a, _)| *a < k) {
            return None;
        }
        Some(BiPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(&(a, b), c)| ((a - k, b), c.clone())).collect(),
        })
    }

    /// Divide by `second^k`; `None` unless exact.
    pub fn div_second_power(&self, k: u32) -> Option<Self> {
        if self.terms.keys().any(|(_, b)| *b < k) {
            return None;
        }
        Some(BiPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(&(a, b), c)| ((a, b - k), c.clone())).collect(),
        })
    }

    /// Rows indexed by the first exponent, each a dense polynomial in the second variable.
    fn rows(&self) -> BTreeMap<u32, Vec<Elem>> {
        let d = self.depth();
        let mut rows: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let row = rows.entry(a).or_default();
            if row.len() <= b as usize {
                row.resize(b as usize + 1, self.tower.zero(d));
            }
            row[b as usize] = c.clone();
        }
        rows
    }

    /// Substitute `second ↦ second + s` (a constant of the tower).
    pub fn shift_second(&self, s: &Elem) -> Self {
        let d = self.depth();
        let mut p = BiPoly::zero(&self.tower);
        for (a, row) in self.rows() {
            let shifted = poly_taylor_shift(&self.tower, d, &row, s);
            for (b, c) in shifted.into_iter().enumerate() {
                p.add_term((a, b as u32), c);
            }
        }
        p
    }

    /// Substitute `second ↦ second + first^s`.
    pub fn shear_second(&self, s: u32) -> Self {
        let mut p = BiPoly::zero(&self.tower);
        for (&(a, b), c) in &self.terms {
            for (k, binom) in binomial_row(b).into_iter().enumerate() {
                let k = k as u32;
                let coeff = self.tower.scale(c, &Rational::from_integer(binom));
                p.add_term((a + s * (b - k), k), coeff);
            }
        }
        p
    }

    /// Substitute `first ↦ first + second^s`.
    pub fn shear_first(&self, s: u32) -> Self {
        self.swap().shear_second(s).swap()
    }

    /// Exchange the two variables.
    pub fn swap(&self) -> Self {
        BiPoly {
            tower: self.tower.clone(),
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    /// Re-home the coefficients in a tower extending this one.
    pub fn embed(&self, target: &Tower) -> Self {
        if target == &self.tower {
            return self.clone();
        }
        let d = target.depth();
        BiPoly {
            tower: target.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, target.embed(c, d))).collect(),
        }
    }

    pub fn derivative_first(&self) -> Self {
        BiPoly::from_terms(
            &self.tower,
            self.terms
                .iter()
                .filter(|((a, _), _)| *a > 0)
                .map(|(&(a, b), c)| ((a - 1, b), self.tower.scale(c, &Rational::from_integer(a.into())))),
        )
    }

    pub fn derivative_second(&self) -> Self {
        self.swap().derivative_first().swap()
    }

    /// The univariate restriction `p(0, second)`.
    pub fn restrict_first_zero(&self) -> UPoly {
        let row = self.rows().remove(&0).unwrap_or_default();
        UPoly::new(&self.tower, row)
    }

    /// Rational coefficients, when the tower is trivial or the coefficients are rational.
    pub fn rational_terms(&self) -> Option<Vec<((u32, u32), Rational)>> {
        self.terms
            .iter()
            .map(|(k, c)| c.as_rational().map(|q| (*k, q.clone())))
            .collect()
    }

    /// Evaluate over the rationals.
    pub fn eval_rational(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for ((a, b), c) in self.rational_terms()? {
            acc += c * num_traits::pow(x.clone(), a as usize) * num_traits::pow(y.clone(), b as usize);
        }
        Some(acc)
    }

    /// Render with the given variable names, ascending total degree then descending second exponent.
    pub fn render(&self, vars: (&str, &str)) -> String {
        let d = self.depth();
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|x| (x.0 + x.1, std::cmp::Reverse(x.1)));
        let mut out = String::new();
        for (i, k) in keys.iter().enumerate() {
            let c = &self.terms[k];
            let mut mono = Vec::new();
            for (e, v) in [(k.0, vars.0), (k.1, vars.1)] {
                match e {
                    0 => {}
                    1 => mono.push(v.to_string()),
                    _ => mono.push(format!("{v}^{e}")),
                }
            }
            let mono = mono.join("*");
            let (neg, body) = match c.as_rational() {
                Some(q) => {
                    let neg = q < &Rational::zero();
                    let abs = if neg { -q.clone() } else { q.clone() };
                    let body = if mono.is_empty() {
                        abs.to_string()
                    } else if abs.is_one() {
                        mono
                    } else {
                        format!("{abs}*{mono}")
                    };
                    (neg, body)
                }
                None => {
                    let cs = self.tower.render(d, c);
                    let body = if mono.is_empty() {
                        format!("({cs})")
                    } else {
                        format!("({cs})*{mono}")
                    };
                    (false, body)
                }
            };
            match (i, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(("x", "y")))
    }
}
