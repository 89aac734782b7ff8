//! Parsing, pipeline orchestration, and report emission.

mod parser;
mod report;

pub use parser::{parse_polynomial, ParseError, MAX_DEGREE, MAX_EXPONENT};
pub use report::{
    AnalysisReport, ArcCheck, CharPolyReport, FaceReport, JacobianCheck, MotivicReport, Note, SpectrumReport,
    VerificationReport, ZetaFactor, ZetaReport, SCHEMA,
};

use crate::exact::{is_locally_reduced, BiPoly};
use crate::graph::{compute_multiplicities, ResolutionGraph};
use crate::gring::{assemble_main1, assemble_prop32, decompose_all, normalize};
use crate::oracle::{milnor_jacobian, verify_cone_identities, OracleError, DEFAULT_BUDGET};
use crate::realize::{charpoly_milnor, spectrum_partial, zeta_of_class, zeta_of_graph, RealizeError};
use crate::toric::{resolve, ResolveConfig, ResolveError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FrontendError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the polynomial does not vanish at the origin")]
    NotVanishing,
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("{0}")]
    TowerLimit(ResolveError),
    #[error("{0}")]
    Depth(ResolveError),
    #[error("{0}")]
    Budget(OracleError),
    #[error("{0}")]
    Domain(String),
}

impl FrontendError {
    pub fn code(&self) -> &'static str {
        match self {
            FrontendError::Parse(_) => "E_PARSE",
            FrontendError::NotVanishing => "E_NOT_VANISHING",
            FrontendError::ZeroPolynomial => "E_ZERO",
            FrontendError::TowerLimit(_) => "E_TOWER_LIMIT",
            FrontendError::Depth(_) => "E_DEPTH",
            FrontendError::Budget(_) => "E_BUDGET",
            FrontendError::Domain(_) => "E_DOMAIN",
        }
    }

    /// Process exit status: 2 for parse errors, 3 for domain errors, 4 for resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            FrontendError::Parse(_) => 2,
            FrontendError::NotVanishing | FrontendError::ZeroPolynomial | FrontendError::Domain(_) => 3,
            FrontendError::TowerLimit(_) | FrontendError::Depth(_) | FrontendError::Budget(_) => 4,
        }
    }
}

impl From<ResolveError> for FrontendError {
    fn from(e: ResolveError) -> Self {
        match e {
            ResolveError::NotVanishing => FrontendError::NotVanishing,
            ResolveError::ZeroPolynomial => FrontendError::ZeroPolynomial,
            ResolveError::TowerDegreeExceeded { .. } => FrontendError::TowerLimit(e),
            ResolveError::MaxDepthExceeded(_) => FrontendError::Depth(e),
            other => FrontendError::Domain(other.to_string()),
        }
    }
}

impl From<OracleError> for FrontendError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded(_) => FrontendError::Budget(e),
            other => FrontendError::Domain(other.to_string()),
        }
    }
}

/// Parse a germ and check that it vanishes at the origin.
pub fn parse_curve(text: &str) -> Result<BiPoly, FrontendError> {
    let f = parse_polynomial(text)?;
    if f.is_zero() {
        return Err(FrontendError::ZeroPolynomial);
    }
    if f.constant_term().is_some() {
        return Err(FrontendError::NotVanishing);
    }
    Ok(f)
}

/// Canonical text form, readable by [`parse_polynomial`].
pub fn print_polynomial(f: &BiPoly) -> String {
    f.render(("x", "y"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub zeta: bool,
    pub charpoly: bool,
    pub spectrum: bool,
    pub motivic: bool,
    pub verify_jacobian: bool,
    pub verify_arcs: bool,
    pub arc_primes: Vec<u64>,
    pub arc_nmax: u32,
    pub budget: u64,
    pub resolve: ResolveConfig,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            zeta: true,
            charpoly: true,
            spectrum: true,
            motivic: true,
            verify_jacobian: false,
            verify_arcs: false,
            arc_primes: vec![3, 5, 7],
            arc_nmax: 7,
            budget: DEFAULT_BUDGET,
            resolve: ResolveConfig::default(),
        }
    }
}

/// The annotated resolution graph of a germ.
pub fn annotated_graph(f: &BiPoly, cfg: &ResolveConfig) -> Result<ResolutionGraph, FrontendError> {
    Ok(compute_multiplicities(resolve(f, cfg)?))
}

/// Parse and analyze.
pub fn analyze(text: &str, flags: &Flags) -> Result<AnalysisReport, FrontendError> {
    let f = parse_curve(text)?;
    let mut report = run_pipeline(&f, flags)?;
    report.input = text.to_string();
    Ok(report)
}

/// Resolve, annotate, assemble both routes, normalize, realize, and optionally verify.
pub fn run_pipeline(f: &BiPoly, flags: &Flags) -> Result<AnalysisReport, FrontendError> {
    let g = annotated_graph(f, &flags.resolve)?;
    let mut notes = Vec::new();
    let main1 = assemble_main1(&g);
    let prop32 = assemble_prop32(&g);
    let decomposed = decompose_all(&main1);
    let main1_nf = normalize(&main1);
    let prop32_nf = normalize(&prop32);
    let routes_agree = normalize(&decomposed.class) == prop32_nf;
    if !decomposed.transitive {
        notes.push(Note::new(
            "W_AXIS_ACTION",
            "an axis point set is not a single orbit of the rotation",
        ));
    }
    let zeta = zeta_of_graph(&g);
    let zeta_class = zeta_of_class(&main1_nf).map_err(|e| FrontendError::Domain(e.to_string()))?;
    let reduced = is_locally_reduced(f);
    let charpoly = match charpoly_milnor(&zeta, f) {
        Ok(cp) => Some(cp),
        Err(RealizeError::NonReduced) => {
            notes.push(Note::new(
                "E_NONREDUCED",
                "the germ is not reduced; Milnor number and characteristic polynomial omitted",
            ));
            None
        }
        Err(e) => return Err(FrontendError::Domain(e.to_string())),
    };
    let verification = if flags.verify_jacobian || flags.verify_arcs {
        let jacobian = flags.verify_jacobian.then(|| {
            if !reduced {
                return JacobianCheck {
                    milnor_number: None,
                    agrees: None,
                    error: Some("E_NONREDUCED".into()),
                };
            }
            match milnor_jacobian(f) {
                Ok(mu) => JacobianCheck {
                    milnor_number: Some(mu),
                    agrees: charpoly.as_ref().map(|cp| cp.mu == mu),
                    error: None,
                },
                Err(e) => JacobianCheck {
                    milnor_number: None,
                    agrees: None,
                    error: Some(e.to_string()),
                },
            }
        });
        let arcs = if flags.verify_arcs {
            let r = verify_cone_identities(f, &flags.arc_primes, flags.arc_nmax, flags.budget)?;
            Some(ArcCheck::new(&flags.arc_primes, flags.arc_nmax, r))
        } else {
            None
        };
        Some(VerificationReport { jacobian, arcs })
    } else {
        None
    };
    let spectrum = spectrum_partial(&main1_nf);
    Ok(AnalysisReport {
        schema: SCHEMA,
        input: print_polynomial(f),
        polynomial: print_polynomial(f),
        shears: g
            .bamboos
            .first()
            .map(|b| b.shears.iter().map(|s| s.describe(("x", "y"))).collect())
            .unwrap_or_default(),
        newton_polygon: FaceReport::from_graph(&g),
        graph: g.json(),
        motivic: flags.motivic.then(|| MotivicReport {
            main1: main1_nf.to_string(),
            prop32: prop32_nf.to_string(),
            main1_terms: main1_nf.terms.clone(),
            prop32_terms: prop32_nf.terms.clone(),
            routes_agree,
            axis_actions_transitive: decomposed.transitive,
        }),
        zeta: flags.zeta.then(|| ZetaReport::new(&zeta, &zeta_class)),
        charpoly: charpoly.as_ref().filter(|_| flags.charpoly).map(CharPolyReport::new),
        milnor_number: charpoly.as_ref().filter(|_| flags.charpoly).map(|cp| cp.mu),
        spectrum: flags.spectrum.then(|| SpectrumReport::new(&spectrum)),
        verification,
        notes,
    })
}
