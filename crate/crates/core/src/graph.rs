//! The extended simplified resolution graph: data model, multiplicities, gcd data, serialization.

use std::fmt;
use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::exact::{BiPoly, Tower, UPoly};
use crate::newton::{Completion, WeightVector};

/// Path identifier of a bamboo: the `(face, cluster)` indices (1-based) leading to it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BambooId(pub Vec<(usize, usize)>);

impl fmt::Display for BambooId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("1")?;
        for (i, j) in &self.0 {
            write!(f, ".{i}.{j}")?;
        }
        Ok(())
    }
}

/// Why the recursion stopped at a cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalReason {
    /// `A = 1`: a smooth branch transverse to the divisor.
    Simple,
    /// The translated germ is exactly `w^A` times a unit.
    SmoothPower,
    /// The reduced germ has multiplicity one there: a single smooth branch counted `A` times.
    ReducedSimple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Successor {
    Terminal(TerminalReason),
    /// Index of the child bamboo in `ResolutionGraph::bamboos`.
    Bamboo(usize),
}

/// A set of conjugate roots of a face polynomial sharing one multiplicity.
#[derive(Clone, Debug)]
pub struct ClusterRecord {
    /// Monic square-free polynomial over the bamboo tower whose roots `ρ = −ξ` form the cluster.
    pub root_polynomial: UPoly,
    /// Conjugacy degree δ: the number of geometric roots.
    pub degree: u64,
    /// Multiplicity `A` of each root.
    pub multiplicity: u64,
    pub successor: Successor,
}

impl ClusterRecord {
    /// Defining polynomial of `ξ = −ρ`.
    pub fn xi_polynomial(&self) -> UPoly {
        self.root_polynomial.reflect()
    }
}

/// A vertex `E(P)` of a bamboo.
#[derive(Clone, Debug)]
pub struct FaceVertex {
    pub weight: WeightVector,
    /// Exact face function of the local germ, prefactors included.
    pub face_function: BiPoly,
    /// Weighted degree of the face in the local germ.
    pub face_degree: u64,
    /// Order of the pulled-back function along `E(P)`, computed from the germ itself.
    pub direct_order: u64,
    /// Multiplicity from the combinatorial recursion; set by [`compute_multiplicities`].
    pub multiplicity: Option<u64>,
    pub clusters: Vec<ClusterRecord>,
}

impl FaceVertex {
    /// Geometric root count `r = Σ δ`.
    pub fn r(&self) -> u64 {
        self.clusters.iter().map(|c| c.degree).sum()
    }

    /// `A_{B,i} = Σ δ·A` over the clusters.
    pub fn total_multiplicity(&self) -> u64 {
        self.clusters.iter().map(|c| c.degree * c.multiplicity).sum()
    }

    pub fn m(&self) -> u64 {
        self.multiplicity.expect("graph not annotated")
    }

    /// Degree in `G_s`: two horizontal neighbours plus one attachment per geometric root.
    pub fn graph_degree(&self) -> u64 {
        2 + self.r()
    }
}

/// Which variable a shear translates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShearVariable {
    /// `second ↦ second + first^s`.
    Second,
    /// `first ↦ first + second^s`.
    First,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Shear {
    pub variable: ShearVariable,
    pub exponent: u32,
}

impl Shear {
    pub fn describe(&self, vars: (&str, &str)) -> String {
        let (x, y) = vars;
        match self.variable {
            ShearVariable::Second => format!("{y} -> {y} + {x}^{}", self.exponent),
            ShearVariable::First => format!("{x} -> {x} + {y}^{}", self.exponent),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParentLink {
    pub bamboo: usize,
    pub vertex: usize,
    pub cluster: usize,
}

/// The chain of vertices produced by one toric modification.
#[derive(Clone, Debug)]
pub struct Bamboo {
    pub id: BambooId,
    pub floor: usize,
    pub parent: Option<ParentLink>,
    /// Coefficient tower of the local germ.
    pub tower: Tower,
    /// Coordinate changes applied to the local germ before its Newton polygon was taken.
    pub shears: Vec<Shear>,
    pub completion: Completion,
    /// Predecessor multiplicity carried by the germ.
    pub direct_predecessor: u64,
    pub direct_q_left: u64,
    pub direct_q_right: u64,
    pub vertices: Vec<FaceVertex>,
    pub predecessor_multiplicity: Option<u64>,
    pub q_left_multiplicity: Option<u64>,
    pub q_right_multiplicity: Option<u64>,
}

impl Bamboo {
    pub fn m_pred(&self) -> u64 {
        self.predecessor_multiplicity.expect("graph not annotated")
    }

    pub fn q_right(&self) -> u64 {
        self.q_right_multiplicity.expect("graph not annotated")
    }

    /// `Σ_t a_t A_t`.
    pub fn sum_a(&self) -> u64 {
        self.vertices.iter().map(|v| v.weight.a * v.total_multiplicity()).sum()
    }

    /// `Σ_t b_t A_t`.
    pub fn sum_b(&self) -> u64 {
        self.vertices.iter().map(|v| v.weight.b * v.total_multiplicity()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// A pure power of a coordinate: no toric modification is needed.
    Monomial {
        exponent: u64,
    },
    Resolved,
}

#[derive(Clone, Debug)]
pub struct ResolutionGraph {
    pub kind: GraphKind,
    /// Bamboos in depth-first order; index 0 is the floor-1 bamboo.
    pub bamboos: Vec<Bamboo>,
}

impl ResolutionGraph {
    pub fn monomial(exponent: u64) -> Self {
        ResolutionGraph {
            kind: GraphKind::Monomial { exponent },
            bamboos: Vec::new(),
        }
    }

    pub fn is_annotated(&self) -> bool {
        self.bamboos
            .iter()
            .all(|b| b.q_right_multiplicity.is_some() && b.vertices.iter().all(|v| v.multiplicity.is_some()))
    }

    pub fn children(&self, idx: usize) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.bamboos[idx].vertices.iter().enumerate().flat_map(|(i, v)| {
            v.clusters
                .iter()
                .enumerate()
                .filter_map(move |(j, c)| match c.successor {
                    Successor::Bamboo(k) => Some((i, j, k)),
                    Successor::Terminal(_) => None,
                })
        })
    }
}

/// Fill every multiplicity by the combinatorial recursion, floor by floor.
pub fn compute_multiplicities(mut g: ResolutionGraph) -> ResolutionGraph {
    for idx in 0..g.bamboos.len() {
        let m_pred = match g.bamboos[idx].parent {
            None => 0,
            Some(p) => g.bamboos[p.bamboo].vertices[p.vertex].m(),
        };
        let b = &mut g.bamboos[idx];
        let ab: Vec<(u64, u64, u64)> = b
            .vertices
            .iter()
            .map(|v| (v.weight.a, v.weight.b, v.total_multiplicity()))
            .collect();
        for (i, v) in b.vertices.iter_mut().enumerate() {
            let (a, bw, _) = ab[i];
            let before: u64 = ab[..=i].iter().map(|(_, bt, at)| bt * at).sum();
            let after: u64 = ab[i + 1..].iter().map(|(at_a, _, at)| at_a * at).sum();
            v.multiplicity = Some(a * m_pred + a * before + bw * after);
        }
        let sum_a: u64 = ab.iter().map(|(a, _, at)| a * at).sum();
        let sum_b: u64 = ab.iter().map(|(_, bt, at)| bt * at).sum();
        b.predecessor_multiplicity = Some(m_pred);
        b.q_left_multiplicity = b.parent.is_none().then_some(sum_a);
        b.q_right_multiplicity = Some(m_pred + sum_b);
    }
    g
}

/// The gcd data attached to the edge from a cluster to its child bamboo.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdEdge {
    pub parent: String,
    pub child: String,
    /// `m(P_{B,i})`.
    pub vertex_multiplicity: u64,
    /// `A_{B,i,j}`.
    pub cluster_multiplicity: u64,
    /// `gcd(m(P_{B,i}), A_{B,i,j})`.
    pub gcd_cluster: u64,
    /// `m(Q_{B',1})`, the first ray of the child bamboo.
    pub first_ray_multiplicity: u64,
    /// `gcd(m(P_{B,i}), m(Q_{B',1}))`.
    pub gcd_first_ray: u64,
    /// `gcd(m(P[B']), Σ a_t A_t)` for the child bamboo.
    pub bamboo_gcd: u64,
    pub holds: bool,
}

pub fn gcd_edge_data(g: &ResolutionGraph) -> Vec<GcdEdge> {
    let mut out = Vec::new();
    for (idx, b) in g.bamboos.iter().enumerate() {
        for (i, j, k) in g.children(idx) {
            let m = b.vertices[i].m();
            let a = b.vertices[i].clusters[j].multiplicity;
            let child = &g.bamboos[k];
            let q1 = child.completion.q_left;
            let m_q1 = q1.a * child.m_pred() + child.sum_a() * q1.b;
            let bamboo_gcd = child.m_pred().gcd(&child.sum_a());
            let gcd_cluster = m.gcd(&a);
            let gcd_first_ray = m.gcd(&m_q1);
            out.push(GcdEdge {
                parent: b.id.to_string(),
                child: child.id.to_string(),
                vertex_multiplicity: m,
                cluster_multiplicity: a,
                gcd_cluster,
                first_ray_multiplicity: m_q1,
                gcd_first_ray,
                bamboo_gcd,
                holds: gcd_cluster == gcd_first_ray && child.sum_a() == a && child.m_pred() == m,
            });
        }
    }
    out
}

/// Output formats for [`serialize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClusterJson {
    pub xi_polynomial: PolyJson,
    pub conjugacy_degree: u64,
    pub multiplicity: u64,
    pub successor: Option<String>,
    pub terminal: Option<TerminalReason>,
}

/// A polynomial over a tower as a coefficient list, constant term first.
#[derive(Clone, Debug, Serialize)]
pub struct PolyJson {
    pub text: String,
    pub coefficients: Vec<String>,
    pub tower: Vec<LevelJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelJson {
    pub generator: String,
    pub modulus: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexJson {
    pub weight: [u64; 2],
    pub multiplicity: Option<u64>,
    pub direct_order: u64,
    pub r: u64,
    pub face_function: String,
    pub clusters: Vec<ClusterJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BambooJson {
    pub id: String,
    pub floor: usize,
    pub parent: Option<String>,
    pub shears: Vec<String>,
    pub predecessor_multiplicity: Option<u64>,
    pub q_left: [u64; 2],
    pub q_left_multiplicity: Option<u64>,
    pub q_right: [u64; 2],
    pub q_right_multiplicity: Option<u64>,
    pub vertices: Vec<VertexJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphJson {
    pub kind: GraphKind,
    pub bamboos: Vec<BambooJson>,
    pub gcd_edges: Vec<GcdEdge>,
}

pub fn poly_json(p: &UPoly, var: &str) -> PolyJson {
    let t = p.tower();
    PolyJson {
        text: p.render(var),
        coefficients: p.coeffs().iter().map(|c| t.render(t.depth(), c)).collect(),
        tower: t
            .levels()
            .iter()
            .enumerate()
            .map(|(k, l)| LevelJson {
                generator: l.name().to_string(),
                modulus: t.render_poly(k, l.modulus(), l.name()),
            })
            .collect(),
    }
}

impl ResolutionGraph {
    /// Local variable names of a bamboo: the input coordinates on floor 1.
    pub fn vars(&self, idx: usize) -> (&'static str, &'static str) {
        if self.bamboos[idx].floor == 1 {
            ("x", "y")
        } else {
            ("u", "w")
        }
    }

    pub fn json(&self) -> GraphJson {
        let bamboos = self
            .bamboos
            .iter()
            .enumerate()
            .map(|(idx, b)| BambooJson {
                id: b.id.to_string(),
                floor: b.floor,
                parent: b.parent.map(|p| self.bamboos[p.bamboo].id.to_string()),
                shears: b.shears.iter().map(|s| s.describe(self.vars(idx))).collect(),
                predecessor_multiplicity: b.predecessor_multiplicity,
                q_left: [b.completion.q_left.a, b.completion.q_left.b],
                q_left_multiplicity: b.q_left_multiplicity,
                q_right: [b.completion.q_right.a, b.completion.q_right.b],
                q_right_multiplicity: b.q_right_multiplicity,
                vertices: b
                    .vertices
                    .iter()
                    .map(|v| VertexJson {
                        weight: [v.weight.a, v.weight.b],
                        multiplicity: v.multiplicity,
                        direct_order: v.direct_order,
                        r: v.r(),
                        face_function: v.face_function.render(self.vars(idx)),
                        clusters: v
                            .clusters
                            .iter()
                            .map(|c| ClusterJson {
                                xi_polynomial: poly_json(&c.xi_polynomial(), "z"),
                                conjugacy_degree: c.degree,
                                multiplicity: c.multiplicity,
                                successor: match c.successor {
                                    Successor::Bamboo(k) => Some(self.bamboos[k].id.to_string()),
                                    Successor::Terminal(_) => None,
                                },
                                terminal: match c.successor {
                                    Successor::Terminal(r) => Some(r),
                                    Successor::Bamboo(_) => None,
                                },
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        GraphJson {
            kind: self.kind,
            bamboos,
            gcd_edges: if self.is_annotated() {
                gcd_edge_data(self)
            } else {
                Vec::new()
            },
        }
    }

    pub fn dot(&self) -> String {
        let mut s = String::from("graph Gs {\n  node [shape=box];\n");
        let fmt_m = |m: Option<u64>| m.map_or("?".to_string(), |m| m.to_string());
        if let GraphKind::Monomial { exponent } = self.kind {
            let _ = writeln!(s, "  \"monomial\" [label=\"monomial A={exponent}\"];");
        }
        let mut edges = Vec::new();
        for b in &self.bamboos {
            let id = b.id.to_string();
            let mut chain = Vec::new();
            if b.parent.is_none() {
                let n = format!("B{id}:Qleft");
                let _ = writeln!(
                    s,
                    "  \"{n}\" [label=\"B{id} Qleft={} m={}\"];",
                    b.completion.q_left,
                    fmt_m(b.q_left_multiplicity)
                );
                chain.push(n);
            }
            for (i, v) in b.vertices.iter().enumerate() {
                let n = format!("B{id}:P{}", i + 1);
                let _ = writeln!(
                    s,
                    "  \"{n}\" [label=\"B{id} P={} m={} r={}\"];",
                    v.weight,
                    fmt_m(v.multiplicity),
                    v.r()
                );
                chain.push(n);
            }
            let n = format!("B{id}:Qright");
            let _ = writeln!(
                s,
                "  \"{n}\" [label=\"B{id} Qright={} m={}\"];",
                b.completion.q_right,
                fmt_m(b.q_right_multiplicity)
            );
            chain.push(n);
            if let Some(p) = b.parent {
                let pid = self.bamboos[p.bamboo].id.to_string();
                edges.push((format!("B{pid}:P{}", p.vertex + 1), chain[0].clone()));
            }
            for w in chain.windows(2) {
                edges.push((w[0].clone(), w[1].clone()));
            }
        }
        for (a, b) in edges {
            let _ = writeln!(s, "  \"{a}\" -- \"{b}\";");
        }
        s.push_str("}\n");
        s
    }
}

/// Deterministic text rendering of an annotated graph.
pub fn serialize(g: &ResolutionGraph, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&g.json()).expect("graph serializes");
            s.push('\n');
            s
        }
        Format::Dot => g.dot(),
    }
}
