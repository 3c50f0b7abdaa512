//! Schur-complement calculus at the constant-matrix level.
//!
//! Every `sc_*` operation returns a [`SchurWitness`]: an explicit partitioned
//! matrix whose Schur complement equals the requested expression in the
//! input Schur complements. Witnesses carry a provenance note naming the
//! construction.

pub mod assemble;
mod ops;
mod ppt;

pub use ops::*;
pub use ppt::*;

use pencilforge_blockmat::{schur, BlockError, Matrix, PartitionedMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchurError {
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("trailing block is singular")]
    SingularBlock,
    #[error("Schur complement is singular")]
    SingularSchur,
    #[error("inner trailing block of the Schur complement is singular")]
    SingularInnerBlock,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("operation needs a 1x1 Schur complement, got {0}x{0}")]
    NotScalarSchur(usize),
    #[error("requested symmetry mode is unsatisfiable: {0}")]
    ModeUnsatisfiable(String),
}

impl SchurError {
    fn from_block(e: BlockError) -> Self {
        match e {
            BlockError::SingularBlock => SchurError::SingularBlock,
            BlockError::SingularMatrix => SchurError::SingularMatrix,
            BlockError::ModeUnsatisfiable(s) => SchurError::ModeUnsatisfiable(s),
            other => SchurError::Block(other),
        }
    }
}

/// A partitioned matrix whose Schur complement realizes some expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurWitness {
    pub c: PartitionedMatrix,
    pub note: String,
}

impl SchurWitness {
    pub fn new(m: Matrix, split: usize, note: impl Into<String>) -> Result<Self, SchurError> {
        Ok(Self { c: PartitionedMatrix::new(m, split).map_err(SchurError::from_block)?, note: note.into() })
    }

    pub fn matrix(&self) -> &Matrix {
        self.c.matrix()
    }

    pub fn split(&self) -> usize {
        self.c.split()
    }

    /// `C/C22`.
    pub fn schur(&self) -> Result<Matrix, SchurError> {
        schur(&self.c).map_err(SchurError::from_block)
    }
}

/// Schur complement with errors mapped into this crate's vocabulary.
pub(crate) fn schur_checked(a: &PartitionedMatrix) -> Result<Matrix, SchurError> {
    schur(a).map_err(SchurError::from_block)
}
