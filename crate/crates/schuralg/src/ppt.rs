use pencilforge_blockmat::{Matrix, PartitionedMatrix};

use crate::assemble;
use crate::{schur_checked, SchurError, SchurWitness};

/// `ppt₂(A) = [[A/A22, A12·A22⁻¹], [−A22⁻¹·A21, A22⁻¹]]`.
pub fn ppt2(a: &PartitionedMatrix) -> Result<Matrix, SchurError> {
    let inv = a.a22().inverse().map_err(|_| SchurError::SingularBlock)?;
    let s = schur_checked(a)?;
    let b12 = &a.a12() * &inv;
    let b21 = -&(&inv * &a.a21());
    let (k, p) = (a.split(), a.trailing());
    Ok(Matrix::from_blocks(&[k, p], &[k, p], &[vec![Some(&s), Some(&b12)], vec![Some(&b21), Some(&inv)]])?)
}

/// `ppt₁(A) = [[A11⁻¹, −A11⁻¹·A12], [A21·A11⁻¹, A/A11]]`.
pub fn ppt1(a: &PartitionedMatrix) -> Result<Matrix, SchurError> {
    let inv = a.a11().inverse().map_err(|_| SchurError::SingularBlock)?;
    let s = &a.a22() - &(&(&a.a21() * &inv) * &a.a12());
    let b12 = -&(&inv * &a.a12());
    let b21 = &a.a21() * &inv;
    let (k, p) = (a.split(), a.trailing());
    Ok(Matrix::from_blocks(&[k, p], &[k, p], &[vec![Some(&inv), Some(&b12)], vec![Some(&b21), Some(&s)]])?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PptKind {
    Ppt1,
    Ppt2,
}

/// Witness whose Schur complement is `ppt₂(A)` (side `k + 2p`) or `ppt₁(A)`
/// (side `2k + p`). With `signed`, returns the `J·C` / `K·D` variant whose
/// Schur complement is `diag(I, −I)·ppt₂(A)` / `diag(−I, I)·ppt₁(A)` and
/// which inherits symmetry and Hermitian structure from `A`.
pub fn ppt_as_schur(a: &PartitionedMatrix, which: PptKind, signed: bool) -> Result<SchurWitness, SchurError> {
    let side = a.side();
    match which {
        PptKind::Ppt2 => {
            if !a.a22().is_invertible() {
                return Err(SchurError::SingularBlock);
            }
            let note = if signed { "ppt2_signed" } else { "ppt2" };
            SchurWitness::new(assemble::ppt2(a, signed, true), side, note)
        }
        PptKind::Ppt1 => {
            if a.split() == 0 || !a.a11().is_invertible() {
                return Err(SchurError::SingularBlock);
            }
            let note = if signed { "ppt1_signed" } else { "ppt1" };
            SchurWitness::new(assemble::ppt1(a, signed, true), side, note)
        }
    }
}
