//! Exact arithmetic: rationals, dynamic-evaluation extension towers, and sparse polynomials.

mod bigcd;
mod bipoly;
mod roots;
mod tower;
mod upoly;

use num_rational::BigRational;

pub use bigcd::{bipoly_divide_exact, bipoly_gcd, is_locally_reduced, reduced_part};
pub use bipoly::BiPoly;
pub use roots::{rational_roots, RationalRoots};
pub use tower::{Elem, Level, Tower, DEFAULT_MAX_TOWER_DEGREE};
pub use upoly::{adjoin_root, squarefree_decompose, zero_test_split, SplitLeaf, TowerScalar, UPoly, Verdict};

/// Exact rational numbers in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A zero divisor was met: `factor` is a proper monic factor of the modulus at `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRequest {
    pub level: usize,
    pub factor: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero divisor detected at tower level {}", .0.level)]
    Split(SplitRequest),
    #[error("tower degree {degree} exceeds the configured maximum {limit}")]
    TowerDegreeExceeded { degree: usize, limit: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("defining polynomial is not monic")]
    NotMonic,
    #[error("defining polynomial has degree zero")]
    DegreeTooSmall,
    #[error("defining polynomial is not square-free")]
    NotSquareFree,
    #[error("split factor does not divide the modulus")]
    InvalidSplit,
    #[error("operands live in different towers")]
    TowerMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
}

/// Parse-free helper: build a rational from a numerator/denominator pair.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
