use std::fmt;

use super::tower::{
    poly_add, poly_derivative, poly_divrem, poly_divrem_monic, poly_eval, poly_gcd, poly_monic, poly_mul, poly_scale,
    poly_sub, poly_taylor_shift, poly_trim,
};
use super::{Elem, ExactError, Rational, Tower};

/// An element of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerScalar {
    tower: Tower,
    elem: Elem,
}

impl TowerScalar {
    pub fn new(tower: &Tower, elem: Elem) -> Self {
        debug_assert_eq!(elem.0.len(), tower.degree());
        TowerScalar {
            tower: tower.clone(),
            elem,
        }
    }

    pub fn from_rational(tower: &Tower, q: Rational) -> Self {
        TowerScalar::new(tower, tower.from_rational(tower.depth(), q))
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn elem(&self) -> &Elem {
        &self.elem
    }

    pub fn into_elem(self) -> Elem {
        self.elem
    }

    pub fn is_literal_zero(&self) -> bool {
        self.elem.is_literal_zero()
    }

    fn same(&self, other: &Self) -> Result<(), ExactError> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(ExactError::TowerMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same(other)?;
        Ok(TowerScalar::new(&self.tower, self.tower.add(&self.elem, &other.elem)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.same(other)?;
        Ok(TowerScalar::new(&self.tower, self.tower.sub(&self.elem, &other.elem)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.same(other)?;
        let d = self.tower.depth();
        Ok(TowerScalar::new(
            &self.tower,
            self.tower.mul(d, &self.elem, &other.elem),
        ))
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        let d = self.tower.depth();
        Ok(TowerScalar::new(&self.tower, self.tower.inv(d, &self.elem)?))
    }
}

impl fmt::Display for TowerScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tower.render(self.tower.depth(), &self.elem))
    }
}

/// Outcome of a dynamic zero test.
#[derive(Clone, Debug)]
pub enum Verdict {
    Zero,
    NonZero,
    /// The tower was split; each leaf carries the projected scalar and a definite answer.
    Split(Vec<SplitLeaf>),
}

#[derive(Clone, Debug)]
pub struct SplitLeaf {
    pub tower: Tower,
    pub scalar: TowerScalar,
    pub is_zero: bool,
}

/// Decide whether `s` is zero, splitting its tower as often as needed.
pub fn zero_test_split(s: &TowerScalar) -> Result<Verdict, ExactError> {
    let t = s.tower();
    match t.is_zero(t.depth(), s.elem()) {
        Ok(true) => return Ok(Verdict::Zero),
        Ok(false) => return Ok(Verdict::NonZero),
        Err(ExactError::Split(_)) => {}
        Err(e) => return Err(e),
    }
    let mut leaves = Vec::new();
    let mut work = vec![s.clone()];
    while let Some(cur) = work.pop() {
        let t = cur.tower().clone();
        let d = t.depth();
        match t.is_zero(d, cur.elem()) {
            Ok(z) => leaves.push(SplitLeaf {
                tower: t,
                scalar: cur,
                is_zero: z,
            }),
            Err(ExactError::Split(req)) => {
                let (t1, t2) = t.split(&req)?;
                // Push in reverse so leaves come out in factor order.
                for child in [t2, t1] {
                    let e = t.project(&child, req.level, d, cur.elem());
                    work.push(TowerScalar::new(&child, e));
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Verdict::Split(leaves))
}

/// Dense univariate polynomial over a tower, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    tower: Tower,
    coeffs: Vec<Elem>,
}

impl UPoly {
    pub fn new(tower: &Tower, mut coeffs: Vec<Elem>) -> Self {
        poly_trim(&mut coeffs);
        UPoly {
            tower: tower.clone(),
            coeffs,
        }
    }

    pub fn from_rationals(tower: &Tower, coeffs: &[Rational]) -> Self {
        let d = tower.depth();
        UPoly::new(
            tower,
            coeffs.iter().map(|q| tower.from_rational(d, q.clone())).collect(),
        )
    }

    pub fn from_ints(tower: &Tower, coeffs: &[i64]) -> Self {
        let qs: Vec<Rational> = coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect();
        UPoly::from_rationals(tower, &qs)
    }

    /// `z - r`.
    pub fn linear(tower: &Tower, root: &Elem) -> Self {
        let d = tower.depth();
        UPoly::new(tower, vec![tower.neg(d, root), tower.one(d)])
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> TowerScalar {
        let d = self.tower.depth();
        TowerScalar::new(
            &self.tower,
            self.coeffs.get(i).cloned().unwrap_or_else(|| self.tower.zero(d)),
        )
    }

    /// Sparse view: nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Elem)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_literal_zero())
    }

    fn depth(&self) -> usize {
        self.tower.depth()
    }

    pub fn add(&self, o: &Self) -> Self {
        UPoly::new(
            &self.tower,
            poly_add(&self.tower, &self.coeffs, &o.coeffs, self.depth()),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        UPoly::new(
            &self.tower,
            poly_sub(&self.tower, &self.coeffs, &o.coeffs, self.depth()),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        UPoly::new(
            &self.tower,
            poly_mul(&self.tower, self.depth(), &self.coeffs, &o.coeffs),
        )
    }

    pub fn scale(&self, c: &Elem) -> Self {
        UPoly::new(&self.tower, poly_scale(&self.tower, self.depth(), &self.coeffs, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let d = self.depth();
        let mut acc = UPoly::new(&self.tower, vec![self.tower.one(d)]);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(&self.tower, poly_derivative(&self.tower, &self.coeffs))
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        poly_eval(&self.tower, self.depth(), &self.coeffs, x)
    }

    /// `p(z + s)`.
    pub fn shift(&self, s: &Elem) -> Self {
        UPoly::new(
            &self.tower,
            poly_taylor_shift(&self.tower, self.depth(), &self.coeffs, s),
        )
    }

    /// `p(-z)` made monic up to sign.
    pub fn reflect(&self) -> Self {
        let d = self.depth();
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { self.tower.neg(d, c) } else { c.clone() })
            .collect();
        let mut p = UPoly::new(&self.tower, c);
        if self.coeffs.len().is_multiple_of(2) {
            p = p.scale(&self.tower.from_int(d, -1));
        }
        p
    }

    /// Remove the largest power of the variable; returns the stripped polynomial and the power.
    pub fn strip_zero_root(&self) -> (Self, usize) {
        let k = self.coeffs.iter().take_while(|c| c.is_literal_zero()).count();
        (UPoly::new(&self.tower, self.coeffs[k..].to_vec()), k)
    }

    pub fn divrem(&self, o: &Self) -> Result<(Self, Self), ExactError> {
        let (q, r) = poly_divrem(&self.tower, self.depth(), &self.coeffs, &o.coeffs)?;
        Ok((UPoly::new(&self.tower, q), UPoly::new(&self.tower, r)))
    }

    /// Exact quotient by a monic divisor.
    pub fn div_monic(&self, o: &Self) -> Self {
        let (q, _) = poly_divrem_monic(&self.tower, self.depth(), &self.coeffs, &o.coeffs);
        UPoly::new(&self.tower, q)
    }

    pub fn gcd(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(UPoly::new(
            &self.tower,
            poly_gcd(&self.tower, self.depth(), &self.coeffs, &o.coeffs)?,
        ))
    }

    pub fn monic(&self) -> Result<Self, ExactError> {
        Ok(UPoly::new(
            &self.tower,
            poly_monic(&self.tower, self.depth(), &self.coeffs)?,
        ))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&self.tower.one(self.depth()))
    }

    /// Re-home the coefficients in a tower extending this one.
    pub fn embed(&self, target: &Tower) -> Self {
        let d = target.depth();
        UPoly::new(target, self.coeffs.iter().map(|c| target.embed(c, d)).collect())
    }

    pub fn render(&self, var: &str) -> String {
        self.tower.render_poly(self.depth(), &self.coeffs, var)
    }

    /// Rational coefficients, if every coefficient lies in the base field.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational().cloned()).collect()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("z"))
    }
}

/// Yun's square-free decomposition: `g = lc · ∏ G_k^k` with monic, square-free, coprime `G_k`.
pub fn squarefree_decompose(g: &UPoly) -> Result<Vec<(UPoly, u32)>, ExactError> {
    if g.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    if g.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let g = g.monic()?;
    let dg = g.derivative();
    let a0 = g.gcd(&dg)?;
    let mut b = g.div_monic(&a0);
    let c = dg.divrem(&a0)?.0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut k = 1u32;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d)?;
        let a = if a.is_zero() { b.clone() } else { a };
        let b_next = b.div_monic(&a);
        let c = d.divrem(&a)?.0;
        d = c.sub(&b_next.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, k));
        }
        b = b_next;
        k += 1;
    }
    Ok(out)
}

/// Adjoin a root of a monic square-free `q` of degree at least two; degree one returns the root.
pub fn adjoin_root(t: &Tower, q: &UPoly) -> Result<(Tower, TowerScalar), ExactError> {
    if q.tower() != t {
        return Err(ExactError::TowerMismatch);
    }
    if !q.is_monic() {
        return Err(ExactError::NotMonic);
    }
    let d = t.depth();
    match q.degree() {
        None | Some(0) => Err(ExactError::DegreeTooSmall),
        Some(1) => {
            let root = t.neg(d, &q.coeffs()[0]);
            Ok((t.clone(), TowerScalar::new(t, root)))
        }
        Some(_) => {
            let g = q.gcd(&q.derivative())?;
            if g.degree() != Some(0) {
                return Err(ExactError::NotSquareFree);
            }
            let t2 = t.push(format!("z{}", d + 1), q.coeffs().to_vec())?;
            let z = t2.generator(d + 1);
            Ok((t2.clone(), TowerScalar::new(&t2, z)))
        }
    }
}

impl UPoly {
    /// True when every coefficient is literally rational and zero-free checks are trivial.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    /// Leading coefficient as a scalar.
    pub fn lc(&self) -> Option<TowerScalar> {
        self.coeffs.last().map(|c| TowerScalar::new(&self.tower, c.clone()))
    }
}
