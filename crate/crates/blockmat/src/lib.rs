//! Dense exact matrices over the Gaussian rationals with 2×2 block
//! partitions, Schur complements, Kronecker products, commutation matrices
//! and symmetry-preserving rank factorizations.

pub mod factor;
mod modular;
pub mod matrix;
pub mod partition;

pub use factor::{rank_factorize, FactorMode, RankFactorization};
pub use matrix::{mat_inverse, Matrix};
pub use partition::{block_swap_matrix, commutation_matrix, schur, schur_other, swap_blocks, PartitionedMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlockError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("split {split} out of range for side {side}")]
    SplitOutOfRange { split: usize, side: usize },
    #[error("Schur complement needs a nonempty leading block")]
    EmptyLeadingBlock,
    #[error("pivot block is singular")]
    SingularBlock,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("requested factorization mode is unsatisfiable: {0}")]
    ModeUnsatisfiable(String),
}
