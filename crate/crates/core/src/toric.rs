//! Toric modifications: charts, local germs at face roots, and the recursive resolution driver.

use std::collections::VecDeque;

use num_integer::Integer;

use crate::exact::{
    adjoin_root, is_locally_reduced, rational_roots, reduced_part, squarefree_decompose, BiPoly, Elem, ExactError,
    SplitRequest, Tower, TowerScalar, UPoly, DEFAULT_MAX_TOWER_DEGREE,
};
use crate::graph::{
    Bamboo, BambooId, ClusterRecord, FaceVertex, GraphKind, ParentLink, ResolutionGraph, Shear, ShearVariable,
    Successor, TerminalReason,
};
use crate::newton::{newton_faces, unimodular_complete, Completion, Face, NewtonError, WeightVector};

/// The chart `x = u^a v^{a'}`, `y = u^b v^{b'}` of the toric modification at `P = (a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChartMap {
    pub weight: WeightVector,
    pub a_prime: u64,
    pub b_prime: u64,
}

/// The unique chart with `0 ≤ a' < a` and `a b' − a' b = 1`.
pub fn chart_map(p: WeightVector) -> ChartMap {
    let (a, b) = (p.a, p.b);
    let a_prime = if a == 1 {
        0
    } else {
        let inv = (b as i128 % a as i128)
            .extended_gcd(&(a as i128))
            .x
            .rem_euclid(a as i128) as u64;
        (a - inv) % a
    };
    let b_prime = (1 + a_prime * b) / a;
    ChartMap {
        weight: p,
        a_prime,
        b_prime,
    }
}

impl ChartMap {
    /// Image of the exponent `(α, β)` of `x^α y^β`.
    pub fn exponents(&self, alpha: u32, beta: u32) -> (u64, u64) {
        let (al, be) = (alpha as u64, beta as u64);
        (
            self.weight.a * al + self.weight.b * be,
            self.a_prime * al + self.b_prime * be,
        )
    }

    pub fn pull_back(&self, f: &BiPoly) -> Result<BiPoly, ExactError> {
        f.map_exponents(|a, b| self.exponents(a, b))
    }

    /// The face polynomial `F(v)` read in this chart, with its power of `v` removed.
    pub fn face_polynomial(&self, face: &Face) -> UPoly {
        let t = face.face_function.tower();
        let terms: Vec<(u64, &Elem)> = face
            .face_function
            .terms()
            .map(|(&(a, b), c)| (self.exponents(a, b).1, c))
            .collect();
        let low = terms.iter().map(|(e, _)| *e).min().unwrap_or(0);
        let high = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let mut coeffs = vec![t.zero(t.depth()); (high - low) as usize + 1];
        for (e, c) in terms {
            coeffs[(e - low) as usize] = c.clone();
        }
        UPoly::new(t, coeffs)
    }
}

/// A local germ together with the multiplicity of the exceptional divisor `u = 0` it lives on.
#[derive(Clone, Debug)]
pub struct Germ {
    pub poly: BiPoly,
    pub multiplicity: u64,
}

/// Roots of a face polynomial sharing one multiplicity, given by their monic defining polynomial.
#[derive(Clone, Debug)]
pub struct RootCluster {
    pub root_polynomial: UPoly,
    pub multiplicity: u32,
}

/// Initial clusters of a face: square-free layers, with rational roots separated over the rationals.
pub fn face_clusters(face: &Face) -> Result<Vec<RootCluster>, ExactError> {
    let chart = chart_map(face.normal);
    let fp = chart.face_polynomial(face);
    let t = fp.tower().clone();
    let mut out = Vec::new();
    for (layer, mult) in squarefree_decompose(&fp)? {
        if t.depth() == 0 && layer.degree() != Some(1) {
            let rr = rational_roots(&layer);
            for (rho, _) in rr.roots {
                out.push(RootCluster {
                    root_polynomial: UPoly::linear(&t, &t.from_rational(0, rho)),
                    multiplicity: mult,
                });
            }
            if rr.cofactor.degree().unwrap_or(0) > 0 {
                out.push(RootCluster {
                    root_polynomial: rr.cofactor,
                    multiplicity: mult,
                });
            }
        } else {
            out.push(RootCluster {
                root_polynomial: layer,
                multiplicity: mult,
            });
        }
    }
    Ok(out)
}

/// `u^{-d} · (p ∘ chart)(u, w + ρ)` where `d` is the weighted order of `p` along the face.
fn translate(p: &BiPoly, chart: &ChartMap, degree: u64, rho: &Elem) -> Result<BiPoly, ExactError> {
    let d = u32::try_from(degree).map_err(|_| ExactError::ExponentOverflow)?;
    let pulled = chart.pull_back(p)?;
    let divided = pulled
        .div_first_power(d)
        .expect("the face degree is the minimal weighted order");
    Ok(divided.shift_second(rho))
}

/// The germ of the strict transform at the point `v = ρ` of `E(P)`, in coordinates `(u, w)`.
pub fn local_germ_at_root(germ: &Germ, face: &Face, rho: &TowerScalar) -> Result<Germ, ExactError> {
    let chart = chart_map(face.normal);
    let poly = translate(&germ.poly.embed(rho.tower()), &chart, face.degree, rho.elem())?;
    Ok(Germ {
        poly,
        multiplicity: face.normal.a * germ.multiplicity + face.degree,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveConfig {
    pub max_tower_degree: usize,
    pub max_depth: usize,
}

impl Default for ResolveConfig {
    fn default() -> Self {
        ResolveConfig {
            max_tower_degree: DEFAULT_MAX_TOWER_DEGREE,
            max_depth: 32,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("the polynomial does not vanish at the origin")]
    NotVanishing,
    #[error("input coefficients must be rational")]
    NonRationalInput,
    #[error("resolution depth exceeds the configured maximum {0}")]
    MaxDepthExceeded(usize),
    #[error("tower degree {degree} exceeds the configured maximum {limit}")]
    TowerDegreeExceeded { degree: usize, limit: usize },
    #[error("arithmetic failure: {0}")]
    Arithmetic(ExactError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Outcome of a resolution step that may need to be replayed after a tower split.
enum Fail {
    Split(SplitRequest),
    Fatal(ResolveError),
}

impl From<ExactError> for Fail {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Split(r) => Fail::Split(r),
            ExactError::TowerDegreeExceeded { degree, limit } => {
                Fail::Fatal(ResolveError::TowerDegreeExceeded { degree, limit })
            }
            other => Fail::Fatal(ResolveError::Arithmetic(other)),
        }
    }
}

impl From<NewtonError> for Fail {
    fn from(e: NewtonError) -> Self {
        match e {
            NewtonError::Exact(e) => e.into(),
            NewtonError::Zero => Fail::Fatal(ResolveError::ZeroPolynomial),
            NewtonError::NotVanishing => Fail::Fatal(ResolveError::NotVanishing),
        }
    }
}

struct Draft {
    tower: Tower,
    shears: Vec<Shear>,
    completion: Completion,
    m_pred: u64,
    q_left: u64,
    q_right: u64,
    vertices: Vec<VertexDraft>,
}

struct VertexDraft {
    weight: WeightVector,
    face_function: BiPoly,
    face_degree: u64,
    direct_order: u64,
    clusters: Vec<ClusterDraft>,
}

struct ClusterDraft {
    root_polynomial: UPoly,
    multiplicity: u64,
    outcome: Outcome,
}

enum Outcome {
    Terminal(TerminalReason),
    Child(Box<Draft>),
}

/// Order in the second variable of `p(0, w)`, with each candidate leading coefficient tested.
fn w_order(p: &BiPoly) -> Result<u32, Fail> {
    let t = p.tower();
    let row = p.restrict_first_zero();
    for (i, c) in row.coeffs().iter().enumerate() {
        if c.is_literal_zero() {
            continue;
        }
        t.inv(t.depth(), c)?;
        return Ok(i as u32);
    }
    Err(Fail::Fatal(ResolveError::Internal(
        "translated germ is divisible by u".into(),
    )))
}

/// True if every term of `p` below `w^a` vanishes.
fn is_smooth_power(p: &BiPoly, a: u32) -> Result<bool, Fail> {
    let t = p.tower();
    for (&(_, beta), c) in p.terms() {
        if beta < a && !t.is_zero(t.depth(), c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Make `h` not divisible by the second variable via `second ↦ second + first^s`.
fn shear_second_axis(h: BiPoly, hr: Option<BiPoly>) -> Result<(BiPoly, Option<BiPoly>, Option<Shear>), Fail> {
    let k = h.second_order();
    if k == 0 {
        return Ok((h, hr, None));
    }
    let rest = h.div_second_power(k).expect("second order divides");
    let (e, c) = rest
        .terms()
        .filter(|((_, b), _)| *b == 0)
        .map(|(&(a, _), c)| (a, c.clone()))
        .min_by_key(|x| x.0)
        .expect("a term free of the second variable");
    let t = h.tower();
    t.inv(t.depth(), &c)?;
    let s = e + 1;
    let shear = Shear {
        variable: ShearVariable::Second,
        exponent: s,
    };
    Ok((h.shear_second(s), hr.map(|p| p.shear_second(s)), Some(shear)))
}

fn shear_first_axis(h: BiPoly, hr: Option<BiPoly>) -> Result<(BiPoly, Option<BiPoly>, Option<Shear>), Fail> {
    let (h, hr, s) = shear_second_axis(h.swap(), hr.map(|p| p.swap()))?;
    let s = s.map(|s| Shear {
        variable: ShearVariable::First,
        exponent: s.exponent,
    });
    Ok((h.swap(), hr.map(|p| p.swap()), s))
}

struct Driver {
    cfg: ResolveConfig,
}

impl Driver {
    fn site(
        &self,
        h: BiPoly,
        hr: Option<BiPoly>,
        m_pred: u64,
        floor: usize,
        mut shears: Vec<Shear>,
    ) -> Result<Draft, Fail> {
        if floor > self.cfg.max_depth {
            return Err(Fail::Fatal(ResolveError::MaxDepthExceeded(self.cfg.max_depth)));
        }
        let (h, hr) = if floor > 1 {
            let (h, hr, s) = shear_second_axis(h, hr)?;
            shears.extend(s);
            (h, hr)
        } else {
            (h, hr)
        };
        let faces = newton_faces(&h)?;
        let normals: Vec<WeightVector> = faces.iter().map(|f| f.normal).collect();
        let completion = unimodular_complete(&normals);
        let ord = |q: WeightVector| q.a * m_pred + q.order(&h).unwrap_or(0);
        let (q_left, q_right) = (ord(completion.q_left), ord(completion.q_right));
        let vertices = faces
            .iter()
            .map(|face| self.vertex(&h, hr.as_ref(), face, m_pred, floor))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Draft {
            tower: h.tower().clone(),
            shears,
            completion,
            m_pred,
            q_left,
            q_right,
            vertices,
        })
    }

    fn vertex(
        &self,
        h: &BiPoly,
        hr: Option<&BiPoly>,
        face: &Face,
        m_pred: u64,
        floor: usize,
    ) -> Result<VertexDraft, Fail> {
        let tower = h.tower();
        let mut queue: VecDeque<RootCluster> = face_clusters(face)?.into();
        let mut clusters = Vec::new();
        while let Some(rc) = queue.pop_front() {
            match self.cluster(h, hr, face, &rc, m_pred, floor) {
                Ok(c) => clusters.push(c),
                Err(Fail::Split(req))
                    if req.level == tower.depth() + 1 && rc.root_polynomial.degree().unwrap_or(0) >= 2 =>
                {
                    let part = UPoly::new(tower, req.factor);
                    let rest = rc.root_polynomial.div_monic(&part);
                    for g in [rest, part] {
                        queue.push_front(RootCluster {
                            root_polynomial: g,
                            multiplicity: rc.multiplicity,
                        });
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Ok(VertexDraft {
            weight: face.normal,
            face_function: face.face_function.clone(),
            face_degree: face.degree,
            direct_order: face.normal.a * m_pred + face.degree,
            clusters,
        })
    }

    fn cluster(
        &self,
        h: &BiPoly,
        hr: Option<&BiPoly>,
        face: &Face,
        rc: &RootCluster,
        m_pred: u64,
        floor: usize,
    ) -> Result<ClusterDraft, Fail> {
        let a = rc.multiplicity;
        let chart = chart_map(face.normal);
        let (t2, rho) = adjoin_root(h.tower(), &rc.root_polynomial)?;
        let germ = translate(&h.embed(&t2), &chart, face.degree, rho.elem())?;
        if w_order(&germ)? != a {
            return Err(Fail::Fatal(ResolveError::Internal(
                "root multiplicity disagrees with the translated germ".into(),
            )));
        }
        let hr2 = match hr {
            Some(p) => {
                let p = p.embed(&t2);
                let d = face.normal.order(&p).expect("companion is nonzero");
                Some(translate(&p, &chart, d, rho.elem())?)
            }
            None => None,
        };
        let outcome = if a == 1 {
            Outcome::Terminal(TerminalReason::Simple)
        } else if is_smooth_power(&germ, a)? {
            Outcome::Terminal(TerminalReason::SmoothPower)
        } else if match &hr2 {
            Some(r) => w_order(r)? == 1,
            None => false,
        } {
            Outcome::Terminal(TerminalReason::ReducedSimple)
        } else {
            let m = face.normal.a * m_pred + face.degree;
            Outcome::Child(Box::new(self.site(germ, hr2, m, floor + 1, Vec::new())?))
        };
        Ok(ClusterDraft {
            root_polynomial: rc.root_polynomial.clone(),
            multiplicity: a as u64,
            outcome,
        })
    }
}

fn flatten(d: Draft, id: BambooId, floor: usize, parent: Option<ParentLink>, out: &mut Vec<Bamboo>) -> usize {
    let idx = out.len();
    out.push(Bamboo {
        id: id.clone(),
        floor,
        parent,
        tower: d.tower,
        shears: d.shears,
        completion: d.completion,
        direct_predecessor: d.m_pred,
        direct_q_left: d.q_left,
        direct_q_right: d.q_right,
        vertices: Vec::new(),
        predecessor_multiplicity: None,
        q_left_multiplicity: None,
        q_right_multiplicity: None,
    });
    let mut vertices = Vec::with_capacity(d.vertices.len());
    for (i, v) in d.vertices.into_iter().enumerate() {
        let mut clusters = Vec::with_capacity(v.clusters.len());
        for (j, c) in v.clusters.into_iter().enumerate() {
            let degree = c.root_polynomial.degree().unwrap_or(0) as u64;
            let successor = match c.outcome {
                Outcome::Terminal(r) => Successor::Terminal(r),
                Outcome::Child(child) => {
                    let mut path = id.0.clone();
                    path.push((i + 1, j + 1));
                    let link = ParentLink {
                        bamboo: idx,
                        vertex: i,
                        cluster: j,
                    };
                    Successor::Bamboo(flatten(*child, BambooId(path), floor + 1, Some(link), out))
                }
            };
            clusters.push(ClusterRecord {
                root_polynomial: c.root_polynomial,
                degree,
                multiplicity: c.multiplicity,
                successor,
            });
        }
        vertices.push(FaceVertex {
            weight: v.weight,
            face_function: v.face_function,
            face_degree: v.face_degree,
            direct_order: v.direct_order,
            multiplicity: None,
            clusters,
        });
    }
    out[idx].vertices = vertices;
    idx
}

/// Resolve a germ with rational coefficients; the result carries direct data only.
pub fn resolve(f: &BiPoly, cfg: &ResolveConfig) -> Result<ResolutionGraph, ResolveError> {
    if f.is_zero() {
        return Err(ResolveError::ZeroPolynomial);
    }
    if f.tower().depth() != 0 {
        return Err(ResolveError::NonRationalInput);
    }
    if f.constant_term().is_some() {
        return Err(ResolveError::NotVanishing);
    }
    let t = Tower::with_limit(cfg.max_tower_degree);
    let f = BiPoly::from_terms(&t, f.terms().map(|(k, c)| (*k, c.clone())));
    if f.len() == 1 {
        let (a, b) = f.support().next().expect("one term");
        if a == 0 || b == 0 {
            return Ok(ResolutionGraph::monomial((a + b) as u64));
        }
    }
    let companion = (!is_locally_reduced(&f)).then(|| reduced_part(&f));
    let fatal = |e: Fail| match e {
        Fail::Fatal(e) => e,
        Fail::Split(_) => ResolveError::Internal("unhandled tower split".into()),
    };
    let mut shears = Vec::new();
    let (h, hr, s) = shear_second_axis(f, companion).map_err(fatal)?;
    shears.extend(s);
    let (h, hr, s) = shear_first_axis(h, hr).map_err(fatal)?;
    shears.extend(s);
    let draft = Driver { cfg: *cfg }.site(h, hr, 0, 1, shears).map_err(fatal)?;
    let mut bamboos = Vec::new();
    flatten(draft, BambooId::default(), 1, None, &mut bamboos);
    Ok(ResolutionGraph {
        kind: GraphKind::Resolved,
        bamboos,
    })
}
