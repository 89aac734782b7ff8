use serde::Serialize;

use crate::graph::{GraphJson, ResolutionGraph};
use crate::gring::Term;
use crate::oracle::{ConeCase, ConeReport};
use crate::realize::{CharPoly, SpecPoly, ZetaFn};

pub const SCHEMA: &str = "curve-milnor/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Note {
    pub code: String,
    pub message: String,
}

impl Note {
    pub fn new(code: &str, message: &str) -> Self {
        Note {
            code: code.into(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceReport {
    pub normal: [u64; 2],
    /// Endpoint nearer the `y`-axis.
    pub left: [u32; 2],
    pub right: [u32; 2],
    pub degree: u64,
    pub face_function: String,
}

impl FaceReport {
    /// Faces of the floor-1 germ, after the coordinate shears.
    pub fn from_graph(g: &ResolutionGraph) -> Vec<FaceReport> {
        let Some(b) = g.bamboos.first() else {
            return Vec::new();
        };
        b.vertices
            .iter()
            .map(|v| {
                let pts: Vec<(u32, u32)> = v.face_function.support().collect();
                let left = *pts.iter().max_by_key(|p| p.1).expect("face has points");
                let right = *pts.iter().max_by_key(|p| p.0).expect("face has points");
                FaceReport {
                    normal: [v.weight.a, v.weight.b],
                    left: [left.0, left.1],
                    right: [right.0, right.1],
                    degree: v.face_degree,
                    face_function: v.face_function.render(("x", "y")),
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MotivicReport {
    pub main1: String,
    pub prop32: String,
    pub main1_terms: Vec<Term>,
    pub prop32_terms: Vec<Term>,
    /// The affine-face assembly, decomposed, equals the torus-face assembly.
    pub routes_agree: bool,
    pub axis_actions_transitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaFactor {
    pub degree: u64,
    pub exponent: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaReport {
    /// `∏ (1 - t^degree)^exponent`.
    pub factors: Vec<ZetaFactor>,
    pub text: String,
    /// The class realization agrees with the graph product.
    pub class_agrees: bool,
}

impl ZetaReport {
    pub fn new(z: &ZetaFn, from_class: &ZetaFn) -> Self {
        ZetaReport {
            factors: z
                .factors
                .iter()
                .map(|(&degree, &exponent)| ZetaFactor { degree, exponent })
                .collect(),
            text: z.to_string(),
            class_agrees: z == from_class,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CharPolyReport {
    /// Constant term first.
    pub coefficients: Vec<String>,
    pub text: String,
}

impl CharPolyReport {
    pub fn new(cp: &CharPoly) -> Self {
        CharPolyReport {
            coefficients: cp.coeffs.iter().map(|c| c.to_string()).collect(),
            text: cp.render(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    /// `(α, n_α)` in increasing `α`.
    pub pairs: Vec<(String, i64)>,
    pub residual: Vec<String>,
    pub text: String,
}

impl SpectrumReport {
    pub fn new(sp: &SpecPoly) -> Self {
        SpectrumReport {
            pairs: sp.closed.iter().map(|(a, n)| (a.to_string(), *n)).collect(),
            residual: sp.residual.clone(),
            text: sp.render(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianCheck {
    pub milnor_number: Option<u64>,
    pub agrees: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcCheck {
    pub primes: Vec<u64>,
    pub n_max: u32,
    pub all_pass: bool,
    pub cases: Vec<ConeCase>,
    pub skipped: Vec<(u64, (u32, u32), u32)>,
}

impl ArcCheck {
    pub fn new(primes: &[u64], n_max: u32, r: ConeReport) -> Self {
        ArcCheck {
            primes: primes.to_vec(),
            n_max,
            all_pass: r.all_pass(),
            cases: r.cases,
            skipped: r.skipped,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub jacobian: Option<JacobianCheck>,
    pub arcs: Option<ArcCheck>,
}

/// Everything computed for one germ; serializes deterministically.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub input: String,
    pub polynomial: String,
    pub shears: Vec<String>,
    pub newton_polygon: Vec<FaceReport>,
    pub graph: GraphJson,
    pub motivic: Option<MotivicReport>,
    pub zeta: Option<ZetaReport>,
    pub charpoly: Option<CharPolyReport>,
    pub milnor_number: Option<u64>,
    pub spectrum: Option<SpectrumReport>,
    pub verification: Option<VerificationReport>,
    pub notes: Vec<Note>,
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text summary.
    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        out.push(format!("polynomial: {}", self.polynomial));
        if !self.shears.is_empty() {
            out.push(format!("shears: {}", self.shears.join(", ")));
        }
        for f in &self.newton_polygon {
            out.push(format!(
                "face P=({},{}) degree {}: {}",
                f.normal[0], f.normal[1], f.degree, f.face_function
            ));
        }
        for b in &self.graph.bamboos {
            if let Some(m) = b.q_left_multiplicity {
                out.push(format!("B{} Qleft=({},{}) m={m}", b.id, b.q_left[0], b.q_left[1]));
            }
            for v in &b.vertices {
                out.push(format!(
                    "B{} P=({},{}) m={} r={}",
                    b.id,
                    v.weight[0],
                    v.weight[1],
                    v.multiplicity.map_or("?".into(), |m| m.to_string()),
                    v.r
                ));
            }
            if let Some(m) = b.q_right_multiplicity {
                out.push(format!("B{} Qright=({},{}) m={m}", b.id, b.q_right[0], b.q_right[1]));
            }
        }
        if let Some(m) = &self.motivic {
            out.push(format!("motivic fiber: {}", m.main1));
            out.push(format!("torus form: {}", m.prop32));
            out.push(format!("routes agree: {}", m.routes_agree));
        }
        if let Some(z) = &self.zeta {
            out.push(format!("zeta: {}", z.text));
        }
        if let Some(c) = &self.charpoly {
            out.push(format!("charpoly: {}", c.text));
        }
        if let Some(mu) = self.milnor_number {
            out.push(format!("milnor number: {mu}"));
        }
        if let Some(s) = &self.spectrum {
            out.push(format!("spectrum: {}", s.text));
            for r in &s.residual {
                out.push(format!("spectrum residual: {r}"));
            }
        }
        if let Some(v) = &self.verification {
            if let Some(j) = &v.jacobian {
                match (j.milnor_number, &j.error) {
                    (Some(mu), _) => out.push(format!("jacobian milnor number: {mu}")),
                    (None, Some(e)) => out.push(format!("jacobian check skipped: {e}")),
                    _ => {}
                }
            }
            if let Some(a) = &v.arcs {
                let passed = a.cases.iter().filter(|c| c.pass).count();
                out.push(format!("arc identities: {passed}/{} pass", a.cases.len()));
            }
        }
        for n in &self.notes {
            out.push(format!("note {}: {}", n.code, n.message));
        }
        out.push(String::new());
        out.join("\n")
    }
}
