//! Exact synthesis and verification of linear-pencil realizations
//! `f(z) = A(z)/A₂₂(z)` of rational matrix functions over the Gaussian
//! rationals.
//!
//! This crate re-exports the component crates under short names.

pub use pencilforge_arith as arith;
pub use pencilforge_blockmat as blockmat;
pub use pencilforge_expr as expr;
pub use pencilforge_realize as realize;
pub use pencilforge_schuralg as schuralg;
pub use pencilforge_verify as verify;

pub use pencilforge_arith::{MatrixPoly, MultiPoly, RationalMatrixFunction, SymmetryFlags, GR};
pub use pencilforge_blockmat::{Matrix, PartitionedMatrix};
pub use pencilforge_realize::{realize as realize_function, Pencil, Realization, RealizeOptions};
pub use pencilforge_verify::{check_pencil_structure, check_realization, VerifyReport};
