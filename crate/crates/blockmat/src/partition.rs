use pencilforge_arith::GR;

use crate::matrix::Matrix;
use crate::BlockError;

/// Square matrix with a 2×2 block structure: `A11` is the leading
/// `split×split` block, `A22` the trailing one. `split == side` means an
/// empty `A22`, so the Schur complement is the matrix itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionedMatrix {
    m: Matrix,
    split: usize,
}

impl PartitionedMatrix {
    pub fn new(m: Matrix, split: usize) -> Result<Self, BlockError> {
        if !m.is_square() {
            return Err(BlockError::NotSquare);
        }
        if split > m.rows() {
            return Err(BlockError::SplitOutOfRange { split, side: m.rows() });
        }
        Ok(Self { m, split })
    }

    /// `A` viewed as its own Schur complement (empty trailing block).
    pub fn degenerate(m: Matrix) -> Result<Self, BlockError> {
        let s = m.rows();
        Self::new(m, s)
    }

    /// Build from the four blocks.
    pub fn from_blocks(a11: &Matrix, a12: &Matrix, a21: &Matrix, a22: &Matrix) -> Result<Self, BlockError> {
        let k = a11.rows();
        let r = a22.rows();
        let m = Matrix::from_blocks(&[k, r], &[k, r], &[vec![Some(a11), Some(a12)], vec![Some(a21), Some(a22)]])?;
        Self::new(m, k)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix {
        self.m
    }

    pub fn split(&self) -> usize {
        self.split
    }

    pub fn side(&self) -> usize {
        self.m.rows()
    }

    /// Size of the trailing block.
    pub fn trailing(&self) -> usize {
        self.side() - self.split
    }

    pub fn is_degenerate(&self) -> bool {
        self.split == self.side()
    }

    pub fn a11(&self) -> Matrix {
        self.m.sub_matrix(0, self.split, 0, self.split)
    }

    pub fn a12(&self) -> Matrix {
        self.m.sub_matrix(0, self.split, self.split, self.side())
    }

    pub fn a21(&self) -> Matrix {
        self.m.sub_matrix(self.split, self.side(), 0, self.split)
    }

    pub fn a22(&self) -> Matrix {
        self.m.sub_matrix(self.split, self.side(), self.split, self.side())
    }

    pub fn with_split(&self, split: usize) -> Result<Self, BlockError> {
        Self::new(self.m.clone(), split)
    }

    pub fn map(&self, f: impl Fn(&Matrix) -> Matrix) -> Self {
        Self { m: f(&self.m), split: self.split }
    }
}

/// `A/A22 = A11 − A12·A22⁻¹·A21`.
pub fn schur(a: &PartitionedMatrix) -> Result<Matrix, BlockError> {
    if a.split == 0 {
        return Err(BlockError::EmptyLeadingBlock);
    }
    if a.is_degenerate() {
        return Ok(a.m.clone());
    }
    let x = a.a22().solve(&a.a21()).map_err(|_| BlockError::SingularBlock)?;
    Ok(&a.a11() - &(&a.a12() * &x))
}

/// `Uᵀ A U` with `U = [[0, I_k], [I_{s−k}, 0]]`: swaps the block order, so the
/// result is `[[A22, A21], [A12, A11]]` split at `s − k`.
pub fn swap_blocks(a: &PartitionedMatrix) -> PartitionedMatrix {
    let s = a.side();
    let k = a.split;
    let perm: Vec<usize> = (k..s).chain(0..k).collect();
    PartitionedMatrix { m: a.m.permute_sym(&perm), split: s - k }
}

/// The block-swap permutation `U = [[0, I_k], [I_{s−k}, 0]]`.
pub fn block_swap_matrix(s: usize, k: usize) -> Matrix {
    let mut u = Matrix::zeros(s, s);
    for i in 0..k {
        u.set(i, s - k + i, GR::one());
    }
    for i in 0..s - k {
        u.set(k + i, i, GR::one());
    }
    u
}

/// `A/A11 = A22 − A21·A11⁻¹·A12`, computed as the Schur complement of the
/// block-swapped matrix.
pub fn schur_other(a: &PartitionedMatrix) -> Result<Matrix, BlockError> {
    if a.split == a.side() {
        return Err(BlockError::EmptyLeadingBlock);
    }
    schur(&swap_blocks(a))
}

/// Commutation matrix `P(m,n) = Σ E_ij ⊗ E_ijᵀ` (`E_ij` is `m×n`).
pub fn commutation_matrix(m: usize, n: usize) -> Matrix {
    let mut p = Matrix::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            p.set(i * n + j, j * m + i, GR::one());
        }
    }
    p
}
