//! Formal classes in the equivariant Grothendieck ring and the two assemblies of the motivic Milnor fiber.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::graph::{Bamboo, ClusterRecord, GraphKind, ResolutionGraph};
use crate::newton::WeightVector;

/// A root cluster of a face, keyed by the defining polynomial of `ξ` over its tower.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClusterKey {
    pub xi_polynomial: String,
    /// Coefficients of the defining polynomial, constant term first.
    pub coefficients: Vec<String>,
    pub tower: String,
    pub multiplicity: u64,
    pub conjugacy_degree: u64,
}

impl ClusterKey {
    pub fn from_record(c: &ClusterRecord) -> Self {
        let xi = c.xi_polynomial();
        let t = xi.tower();
        ClusterKey {
            xi_polynomial: xi.render("z"),
            coefficients: xi.coeffs().iter().map(|e| t.render(t.depth(), e)).collect(),
            tower: t.describe(),
            multiplicity: c.multiplicity,
            conjugacy_degree: c.degree,
        }
    }
}

/// `{u^α v^β ∏_j (v^a + ξ_j u^b)^{A_j} = 1}` with the weight-`(a, b)` action of `μ_m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FaceData {
    pub weight: WeightVector,
    pub u_exp: u64,
    pub v_exp: u64,
    pub clusters: Vec<ClusterKey>,
}

impl FaceData {
    /// `Σ δ·A`.
    pub fn total_multiplicity(&self) -> u64 {
        self.clusters.iter().map(|c| c.conjugacy_degree * c.multiplicity).sum()
    }

    /// Number of geometric roots.
    pub fn r(&self) -> u64 {
        self.clusters.iter().map(|c| c.conjugacy_degree).sum()
    }

    /// Weighted degree `m`, the order of the acting group.
    pub fn weighted_degree(&self) -> u64 {
        let (a, b) = (self.weight.a, self.weight.b);
        a * self.u_exp + b * self.v_exp + a * b * self.total_multiplicity()
    }

    /// Point count exponent on the axis `u = 0`, present when `u` does not occur.
    pub fn u_axis(&self) -> Option<u64> {
        (self.u_exp == 0).then(|| self.v_exp + self.weight.a * self.total_multiplicity())
    }

    /// Point count exponent on the axis `v = 0`, present when `v` does not occur.
    pub fn v_axis(&self) -> Option<u64> {
        (self.v_exp == 0).then(|| self.u_exp + self.weight.b * self.total_multiplicity())
    }

    /// Reduced single-root face with no monomial prefactor.
    pub fn is_brieskorn(&self) -> bool {
        self.u_exp == 0
            && self.v_exp == 0
            && self.clusters.len() == 1
            && self.clusters[0].multiplicity == 1
            && self.clusters[0].conjugacy_degree == 1
    }
}

impl fmt::Display for FaceData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P={} u^{} v^{}", self.weight, self.u_exp, self.v_exp)?;
        for c in &self.clusters {
            write!(f, " (xi: {})^{}", c.xi_polynomial, c.multiplicity)?;
            if c.conjugacy_degree > 1 {
                write!(f, " x{}", c.conjugacy_degree)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    One,
    Mu(u64),
    /// `{u^α v^β = 1}` in the torus.
    Monomial(u64, u64),
    TorusFace(FaceData),
    AffineFace(FaceData),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::One => f.write_str("[pt]"),
            Generator::Mu(n) => write!(f, "[mu_{n}]"),
            Generator::Monomial(a, b) => write!(f, "[u^{a} v^{b} = 1]"),
            Generator::TorusFace(d) => write!(f, "[T {d}]"),
            Generator::AffineFace(d) => write!(f, "[X {d}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coefficient: i64,
    pub l_exponent: i32,
    pub generator: Generator,
}

/// A finite `Z[L, L^{-1}]`-combination of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MotClass {
    pub terms: Vec<Term>,
}

impl MotClass {
    pub fn zero() -> Self {
        MotClass::default()
    }

    pub fn generator(g: Generator) -> Self {
        let mut c = MotClass::zero();
        c.push(1, 0, g);
        c
    }

    pub fn push(&mut self, coefficient: i64, l_exponent: i32, generator: Generator) {
        self.terms.push(Term {
            coefficient,
            l_exponent,
            generator,
        });
    }

    /// Add `c·(L − 1)·[g]`.
    pub fn push_l_minus_one(&mut self, c: i64, g: Generator) {
        self.push(c, 1, g.clone());
        self.push(-c, 0, g);
    }

    pub fn is_zero(&self) -> bool {
        normalize(self).terms.is_empty()
    }

    pub fn normalize(self) -> Self {
        normalize(&self)
    }
}

impl fmt::Display for MotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let c = t.coefficient;
            let sign = if c < 0 { "-" } else { "+" };
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.unsigned_abs();
            if abs != 1 {
                write!(f, "{abs}")?;
            }
            match t.l_exponent {
                0 => {}
                1 => f.write_str("L")?,
                e => write!(f, "L^{e}")?,
            }
            write!(f, "{}", t.generator)?;
        }
        Ok(())
    }
}

/// Canonical form: monomial classes rewritten, `μ_1` as a point, like terms merged, sorted.
pub fn normalize(c: &MotClass) -> MotClass {
    let mut acc: BTreeMap<(Generator, i32), i64> = BTreeMap::new();
    let mu = |n: u64| if n == 1 { Generator::One } else { Generator::Mu(n) };
    for t in &c.terms {
        match &t.generator {
            Generator::Monomial(a, b) => {
                let g = mu(a.gcd(b));
                *acc.entry((g.clone(), t.l_exponent + 1)).or_default() += t.coefficient;
                *acc.entry((g, t.l_exponent)).or_default() -= t.coefficient;
            }
            Generator::Mu(n) => *acc.entry((mu(*n), t.l_exponent)).or_default() += t.coefficient,
            g => *acc.entry((g.clone(), t.l_exponent)).or_default() += t.coefficient,
        }
    }
    MotClass {
        terms: acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|((generator, l_exponent), coefficient)| Term {
                coefficient,
                l_exponent,
                generator,
            })
            .collect(),
    }
}

/// The face data of vertex `i` of a bamboo.
pub fn face_data(b: &Bamboo, i: usize) -> FaceData {
    let v = &b.vertices[i];
    let before: u64 = b.vertices[..i]
        .iter()
        .map(|t| t.weight.b * t.total_multiplicity())
        .sum();
    let after: u64 = b.vertices[i + 1..]
        .iter()
        .map(|t| t.weight.a * t.total_multiplicity())
        .sum();
    FaceData {
        weight: v.weight,
        u_exp: b.m_pred() + before,
        v_exp: after,
        clusters: v.clusters.iter().map(ClusterKey::from_record).collect(),
    }
}

/// Monomial class of the vertex cone between faces `i` and `i + 1`.
pub fn edge_monomial(b: &Bamboo, i: usize) -> Generator {
    let upto: u64 = b.vertices[..=i]
        .iter()
        .map(|t| t.weight.b * t.total_multiplicity())
        .sum();
    let after: u64 = b.vertices[i + 1..]
        .iter()
        .map(|t| t.weight.a * t.total_multiplicity())
        .sum();
    Generator::Monomial(b.m_pred() + upto, after)
}

fn cluster_terms(b: &Bamboo, out: &mut MotClass) {
    for v in &b.vertices {
        for c in &v.clusters {
            out.push_l_minus_one(-(c.degree as i64), Generator::Mu(c.multiplicity));
        }
    }
}

fn edge_terms(b: &Bamboo, out: &mut MotClass) {
    for i in 0..b.vertices.len().saturating_sub(1) {
        out.push(-1, 0, edge_monomial(b, i));
    }
}

/// `gcd(m(P[B]), Σ a_t A_t)` for a bamboo.
pub fn bamboo_gcd(b: &Bamboo) -> u64 {
    b.m_pred().gcd(&b.sum_a())
}

/// Assembly over `G_s` with affine face generators.
pub fn assemble_main1(g: &ResolutionGraph) -> MotClass {
    if let GraphKind::Monomial { exponent } = g.kind {
        return MotClass::generator(Generator::Mu(exponent));
    }
    let mut out = MotClass::zero();
    for b in &g.bamboos {
        for i in 0..b.vertices.len() {
            out.push(1, 0, Generator::AffineFace(face_data(b, i)));
        }
        edge_terms(b, &mut out);
        cluster_terms(b, &mut out);
    }
    out
}

/// Closed form of one bamboo with torus face generators.
pub fn assemble_prop33(b: &Bamboo) -> MotClass {
    let mut out = MotClass::zero();
    for i in 0..b.vertices.len() {
        out.push(1, 0, Generator::TorusFace(face_data(b, i)));
    }
    edge_terms(b, &mut out);
    cluster_terms(b, &mut out);
    if b.parent.is_none() {
        out.push(1, 0, Generator::Mu(b.q_left_multiplicity.expect("graph not annotated")));
    } else {
        out.push_l_minus_one(-1, Generator::Mu(bamboo_gcd(b)));
    }
    out.push(1, 0, Generator::Mu(b.q_right()));
    out
}

/// Sum of the bamboo closed forms with the connection terms of the deeper bamboos.
pub fn assemble_prop32(g: &ResolutionGraph) -> MotClass {
    if let GraphKind::Monomial { exponent } = g.kind {
        return MotClass::generator(Generator::Mu(exponent));
    }
    let mut out = MotClass::zero();
    for b in &g.bamboos {
        out = out + &assemble_prop33(b);
        if b.parent.is_some() {
            out.push_l_minus_one(1, Generator::Mu(bamboo_gcd(b)));
        }
    }
    out
}

/// Result of splitting an affine face class into its torus part and axis points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub class: MotClass,
    /// True when the rotation acts transitively on every axis point set.
    pub transitive: bool,
}

/// `[X] = [X ∩ torus] + Σ_axes [μ_e]`.
pub fn decompose_affine(face: &FaceData) -> Decomposition {
    let mut class = MotClass::generator(Generator::TorusFace(face.clone()));
    let m = face.weighted_degree();
    let mut transitive = true;
    if let Some(e) = face.u_axis() {
        // v ↦ ζ^b v on {v^e = 1}
        transitive &= m / m.gcd(&face.weight.b) == e;
        class.push(1, 0, Generator::Mu(e));
    }
    if let Some(e) = face.v_axis() {
        transitive &= m / m.gcd(&face.weight.a) == e;
        class.push(1, 0, Generator::Mu(e));
    }
    Decomposition { class, transitive }
}

/// Replace every affine face generator by its decomposition; the flag is the conjunction.
pub fn decompose_all(c: &MotClass) -> Decomposition {
    let mut out = MotClass::zero();
    let mut transitive = true;
    for t in &c.terms {
        match &t.generator {
            Generator::AffineFace(d) => {
                let dec = decompose_affine(d);
                transitive &= dec.transitive;
                for s in dec.class.terms {
                    out.push(t.coefficient * s.coefficient, t.l_exponent + s.l_exponent, s.generator);
                }
            }
            _ => out.terms.push(t.clone()),
        }
    }
    Decomposition { class: out, transitive }
}

/// Compare the two assemblies after decomposition and normalization.
pub fn routes_agree(g: &ResolutionGraph) -> bool {
    normalize(&decompose_all(&assemble_main1(g)).class) == normalize(&assemble_prop32(g))
}

impl std::ops::Add<&MotClass> for MotClass {
    type Output = MotClass;

    fn add(mut self, o: &MotClass) -> MotClass {
        self.terms.extend(o.terms.iter().cloned());
        self
    }
}

impl std::ops::Neg for MotClass {
    type Output = MotClass;

    fn neg(mut self) -> MotClass {
        for t in &mut self.terms {
            t.coefficient = -t.coefficient;
        }
        self
    }
}

impl std::ops::Sub<&MotClass> for MotClass {
    type Output = MotClass;

    fn sub(self, o: &MotClass) -> MotClass {
        self + &-o.clone()
    }
}
