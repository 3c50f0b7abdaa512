//! Exact arithmetic over the Gaussian rationals: scalars, sparse multivariate
//! polynomials, square polynomial matrices and rational matrix functions
//! `P(z)/q(z)` with their symmetry predicates.

pub mod matpoly;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use matpoly::MatrixPoly;
pub use poly::{Exponent, MultiPoly};
pub use rational::{RationalMatrixFunction, SymmetryFlags};
pub use scalar::{GaussianRational, GR};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("matrix size mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("denominator polynomial is identically zero")]
    ZeroDenominator,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("function lacks the real/Hermitian symmetry required here")]
    SymmetryAbsent,
    #[error("every unit substitution makes the denominator vanish")]
    AllSubstitutionsSingular,
    #[error("invalid numeric literal `{0}`")]
    InvalidLiteral(String),
}
