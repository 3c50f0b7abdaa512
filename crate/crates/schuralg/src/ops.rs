use pencilforge_arith::GR;
use pencilforge_blockmat::{commutation_matrix, rank_factorize, FactorMode, Matrix, PartitionedMatrix};

use crate::assemble;
use crate::{schur_checked, SchurError, SchurWitness};

fn need_invertible_trailing(a: &PartitionedMatrix) -> Result<Matrix, SchurError> {
    schur_checked(a)
}

fn shape(msg: String) -> SchurError {
    SchurError::ShapeMismatch(msg)
}

fn same_schur_size(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Result<(), SchurError> {
    if a.split() != b.split() {
        return Err(shape(format!("Schur complements are {0}x{0} and {1}x{1}", a.split(), b.split())));
    }
    Ok(())
}

/// `B = λA`: `B/B22 = λ(A/A22)`.
pub fn sc_scale(a: &PartitionedMatrix, lambda: &GR) -> Result<SchurWitness, SchurError> {
    if lambda.is_zero() {
        return Err(SchurError::ZeroScalar);
    }
    need_invertible_trailing(a)?;
    SchurWitness::new(a.matrix().scale(lambda), a.split(), "scale")
}

/// `C/C22 = A/A22 + B` with `C` equal to `A` except `C11 = A11 + B`.
pub fn sc_add_const(a: &PartitionedMatrix, b: &Matrix) -> Result<SchurWitness, SchurError> {
    if b.rows() != a.split() || b.cols() != a.split() {
        return Err(shape(format!("constant is {}x{}, Schur complement is {2}x{2}", b.rows(), b.cols(), a.split())));
    }
    need_invertible_trailing(a)?;
    SchurWitness::new(assemble::add_leading(a, b), a.split(), "add_const")
}

/// `C/C22 = A/A22 + B/B22`, `C22 = A22 ⊕ B22`.
pub fn sc_add(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Result<SchurWitness, SchurError> {
    same_schur_size(a, b)?;
    need_invertible_trailing(a)?;
    need_invertible_trailing(b)?;
    SchurWitness::new(assemble::add(a, b), a.split(), "add")
}

/// `C/C22 = A/A22 ⊕ 0_l`.
pub fn sc_short_left(a: &PartitionedMatrix, l: usize) -> Result<SchurWitness, SchurError> {
    need_invertible_trailing(a)?;
    SchurWitness::new(assemble::short_left(a, l), a.split() + l, "short_left")
}

/// `D/D22 = 0_k ⊕ B/B22`.
pub fn sc_short_right(b: &PartitionedMatrix, k: usize) -> Result<SchurWitness, SchurError> {
    need_invertible_trailing(b)?;
    SchurWitness::new(assemble::short_right(b, k), b.split() + k, "short_right")
}

/// `C/C22 = A/A22 ⊕ B/B22`.
pub fn sc_dsum(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Result<SchurWitness, SchurError> {
    need_invertible_trailing(a)?;
    need_invertible_trailing(b)?;
    SchurWitness::new(assemble::dsum(a, b), a.split() + b.split(), "dsum")
}

/// `C/C22 = (A/A22)·(B/B22)`.
pub fn sc_matmul(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Result<SchurWitness, SchurError> {
    same_schur_size(a, b)?;
    need_invertible_trailing(a)?;
    need_invertible_trailing(b)?;
    SchurWitness::new(assemble::matmul(a, b), a.split(), "matmul")
}

/// Closed form of `C22⁻¹` for the [`sc_matmul`] witness:
/// `[[A22⁻¹, −A22⁻¹·A21·B12·B22⁻¹], [0, B22⁻¹]]`.
pub fn matmul_trailing_inverse(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Result<Matrix, SchurError> {
    let ai = a.a22().inverse().map_err(|_| SchurError::SingularBlock)?;
    let bi = b.a22().inverse().map_err(|_| SchurError::SingularBlock)?;
    let top_right = -&(&(&(&ai * &a.a21()) * &b.a12()) * &bi);
    let (p, q) = (a.trailing(), b.trailing());
    Ok(Matrix::from_blocks(&[p, q], &[p, q], &[vec![Some(&ai), Some(&top_right)], vec![None, Some(&bi)]])?)
}

/// `D/D22 = B·(A/A22)·C` for `B` `l×k` and `C` `k×l`; `D22 = A22`.
pub fn sc_sandwich(b: &Matrix, a: &PartitionedMatrix, c: &Matrix) -> Result<SchurWitness, SchurError> {
    let k = a.split();
    if b.cols() != k || c.rows() != k || b.rows() != c.cols() {
        return Err(shape(format!(
            "sandwich {}x{} · {k}x{k} · {}x{}",
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    need_invertible_trailing(a)?;
    SchurWitness::new(assemble::sandwich(b, a, c), b.rows(), "sandwich")
}

/// `B/B22 = A⁻¹` with `B = [[0, I], [I, −A]]`.
pub fn sc_inv_as_schur(a: &Matrix) -> Result<SchurWitness, SchurError> {
    if !a.is_invertible() {
        return Err(SchurError::SingularMatrix);
    }
    SchurWitness::new(assemble::inv_as_schur(a, true), a.rows(), "inv_as_schur")
}

/// `C/C22 = (A/A22)⁻¹`, `C22 = −A`.
pub fn sc_inv_of_schur(a: &PartitionedMatrix) -> Result<SchurWitness, SchurError> {
    let s = need_invertible_trailing(a)?;
    if !s.is_invertible() {
        return Err(SchurError::SingularSchur);
    }
    SchurWitness::new(assemble::inv_of_schur(a, true), a.split(), "inv_of_schur")
}

/// `C/C22 = (A/A22) ⊗ B` with `C = A ⊗ B`.
pub fn sc_kron_right(a: &PartitionedMatrix, b: &Matrix) -> Result<SchurWitness, SchurError> {
    need_invertible_trailing(a)?;
    if !b.is_invertible() {
        return Err(SchurError::SingularMatrix);
    }
    SchurWitness::new(assemble::kron_right(a, b), a.split() * b.rows(), "kron_right")
}

/// `D/D22 = A ⊗ (B/B22)` with `D = Qᵀ(B ⊗ A)Q`.
pub fn sc_kron_left(a: &Matrix, b: &PartitionedMatrix) -> Result<SchurWitness, SchurError> {
    if !a.is_invertible() {
        return Err(SchurError::SingularMatrix);
    }
    need_invertible_trailing(b)?;
    SchurWitness::new(assemble::kron_left(a, b), b.split() * a.rows(), "kron_left")
}

/// `M/M22 = (A/A22) ⊗ (B/B22)` with `M = Qᵀ(B ⊗ A)Q` re-split at `k_A·k_B`.
pub fn sc_kron(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Result<SchurWitness, SchurError> {
    let sa = need_invertible_trailing(a)?;
    let sb = need_invertible_trailing(b)?;
    if !sa.is_invertible() || !sb.is_invertible() {
        return Err(SchurError::SingularSchur);
    }
    SchurWitness::new(assemble::kron_left(a.matrix(), b), a.split() * b.split(), "kron")
}

/// The permutation `P = P(m, n)·Q` with `Qᵀ(B⊗A)Q = Pᵀ(A⊗B)P`.
pub fn kron_alternative_permutation(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Matrix {
    let (m, n) = (a.side(), b.side());
    &commutation_matrix(m, n) * &assemble::kron_left_permutation(m, n, b.split())
}

/// `C/C22 = det(A/A22)·B` for `A` with a `1×1` Schur complement, through a
/// rank factorization `B = E(D11 ⊕ 0)F`. `mode = None` picks the strongest
/// symmetry `B` has.
pub fn sc_scalar_product(a: &PartitionedMatrix, b: &Matrix, mode: Option<FactorMode>) -> Result<SchurWitness, SchurError> {
    if a.split() != 1 {
        return Err(SchurError::NotScalarSchur(a.split()));
    }
    if !b.is_square() {
        return Err(shape("scalar product needs a square matrix".into()));
    }
    need_invertible_trailing(a)?;
    let mode = mode.unwrap_or_else(|| FactorMode::detect(b));
    let fct = rank_factorize(b, mode).map_err(SchurError::from_block)?;
    SchurWitness::new(assemble::scalar_product(a, &fct), b.rows(), format!("scalar_product[{mode:?}]"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeWitness {
    pub witness: SchurWitness,
    /// `(A/A22)_44`, the trailing `l×l` block of the first Schur complement.
    pub inner: Matrix,
    /// `C22/A22`, which the quotient formula says equals `inner`.
    pub c22_over_a22: Matrix,
}

/// `C/C22 = (A/A22)/(A/A22)_44`: the same matrix re-split at `k − l`.
pub fn sc_compose(a: &PartitionedMatrix, l: usize) -> Result<ComposeWitness, SchurError> {
    let k = a.split();
    if l >= k {
        return Err(shape(format!("inner block {l} must be smaller than the Schur complement {k}")));
    }
    let s = need_invertible_trailing(a)?;
    let inner = s.sub_matrix(k - l, k, k - l, k);
    if !inner.is_invertible() {
        return Err(SchurError::SingularInnerBlock);
    }
    let c = a.with_split(k - l).map_err(SchurError::from_block)?;
    let c22 = PartitionedMatrix::new(c.a22(), l).map_err(SchurError::from_block)?;
    let c22_over_a22 = schur_checked(&c22)?;
    Ok(ComposeWitness { witness: SchurWitness { c, note: "compose".into() }, inner, c22_over_a22 })
}
