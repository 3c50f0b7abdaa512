//! Synthesis of realizations `f(z) = A(z)/A₂₂(z)` with `A(z)` a linear
//! matrix pencil, preserving realness, symmetry, Hermitian structure and
//! homogeneity on request.
//!
//! Variable indices are 0-based throughout; pencil coefficient slot `j + 1`
//! belongs to variable `j` and slot 0 is the constant term.

mod certify;
mod gadgets;
pub mod lift;
mod pencil;
mod special;
mod synth;

pub use certify::certify;
pub use gadgets::{fixtures, realize_simple_product, realize_square};
pub use lift::{kron_realizations, pencil_kron_const, KronFactor};
pub use pencil::{Pencil, Realization};
pub use special::{embed_special, SpecialForm};
pub use synth::{
    choose_shift, matrix_poly_has_mode, realize, realize_matrix_poly, realize_monomial, realize_scalar_poly,
    RealizeOptions,
};

use pencilforge_arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("variables must differ (got z{} twice)", .0 + 1)]
    SameVariable(usize),
    #[error("variable index {var} out of range for {nvars} variables")]
    VariableOutOfRange { var: usize, nvars: usize },
    #[error("trailing block is singular for every sampled point")]
    IdenticallySingular,
    #[error("realized function is singular for every sampled point")]
    IdenticallySingularSchur,
    #[error("requested symmetry cannot be realized: {0}")]
    ModeUnsatisfiable(String),
    #[error("denominator is identically zero")]
    IdenticallyZeroDenominator,
    #[error("polynomial matrix is identically zero")]
    ZeroPolynomialMatrix,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("trailing block is singular at this point")]
    SingularAtPoint,
    #[error("polynomial matrix has degree above one")]
    NotLinear,
    #[error(transparent)]
    Arith(#[from] ArithError),
}
