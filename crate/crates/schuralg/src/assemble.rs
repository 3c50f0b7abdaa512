//! Raw block assemblies behind every witness construction.
//!
//! Each function is affine in its partitioned-matrix arguments. Blocks that
//! are constant (identities) are emitted only when `unit` is true, so calling
//! an assembly on the coefficient matrices of a linear pencil with
//! `unit = (coefficient index == 0)` lifts the construction to pencils.

use pencilforge_blockmat::{commutation_matrix, Matrix, PartitionedMatrix, RankFactorization};

fn zeros(r: usize, c: usize) -> Matrix {
    Matrix::zeros(r, c)
}

fn unit_block(n: usize, unit: bool) -> Matrix {
    if unit {
        Matrix::identity(n)
    } else {
        Matrix::zeros(n, n)
    }
}

fn grid(sizes: &[usize], blocks: &[Vec<Option<&Matrix>>]) -> Matrix {
    Matrix::from_blocks(sizes, sizes, blocks).expect("assembly block shapes are consistent")
}

/// `A` with `A11` replaced by `A11 + B`.
pub fn add_leading(a: &PartitionedMatrix, b: &Matrix) -> Matrix {
    let mut m = a.matrix().clone();
    let k = a.split();
    m.set_block(0, 0, &(&a.a11() + b));
    debug_assert_eq!(b.rows(), k);
    m
}

/// `[[A11+B11, A12, B12], [A21, A22, 0], [B21, 0, B22]]`.
pub fn add(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Matrix {
    let (k, p, q) = (a.split(), a.trailing(), b.trailing());
    let s11 = &a.a11() + &b.a11();
    let (a12, a21, a22) = (a.a12(), a.a21(), a.a22());
    let (b12, b21, b22) = (b.a12(), b.a21(), b.a22());
    grid(
        &[k, p, q],
        &[
            vec![Some(&s11), Some(&a12), Some(&b12)],
            vec![Some(&a21), Some(&a22), None],
            vec![Some(&b21), None, Some(&b22)],
        ],
    )
}

/// `[[A11, 0, A12], [0, 0_l, 0], [A21, 0, A22]]`.
pub fn short_left(a: &PartitionedMatrix, l: usize) -> Matrix {
    let (k, p) = (a.split(), a.trailing());
    let (a11, a12, a21, a22) = (a.a11(), a.a12(), a.a21(), a.a22());
    grid(
        &[k, l, p],
        &[vec![Some(&a11), None, Some(&a12)], vec![None, None, None], vec![Some(&a21), None, Some(&a22)]],
    )
}

/// `[[0_k, 0, 0], [0, B11, B12], [0, B21, B22]]`.
pub fn short_right(b: &PartitionedMatrix, k: usize) -> Matrix {
    zeros(k, k).direct_sum(b.matrix())
}

/// `[[A11, 0, A12, 0], [0, B11, 0, B12], [A21, 0, A22, 0], [0, B21, 0, B22]]`.
pub fn dsum(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Matrix {
    let (k, l, p, q) = (a.split(), b.split(), a.trailing(), b.trailing());
    let (a11, a12, a21, a22) = (a.a11(), a.a12(), a.a21(), a.a22());
    let (b11, b12, b21, b22) = (b.a11(), b.a12(), b.a21(), b.a22());
    grid(
        &[k, l, p, q],
        &[
            vec![Some(&a11), None, Some(&a12), None],
            vec![None, Some(&b11), None, Some(&b12)],
            vec![Some(&a21), None, Some(&a22), None],
            vec![None, Some(&b21), None, Some(&b22)],
        ],
    )
}

/// `[[A11·B11, A12, A11·B12], [A21·B11, A22, A21·B12], [B21, 0, B22]]`.
pub fn matmul(a: &PartitionedMatrix, b: &PartitionedMatrix) -> Matrix {
    let (k, p, q) = (a.split(), a.trailing(), b.trailing());
    let (a11, a12, a21, a22) = (a.a11(), a.a12(), a.a21(), a.a22());
    let (b11, b12, b21, b22) = (b.a11(), b.a12(), b.a21(), b.a22());
    let c11 = &a11 * &b11;
    let c13 = &a11 * &b12;
    let c21 = &a21 * &b11;
    let c23 = &a21 * &b12;
    grid(
        &[k, p, q],
        &[
            vec![Some(&c11), Some(&a12), Some(&c13)],
            vec![Some(&c21), Some(&a22), Some(&c23)],
            vec![Some(&b21), None, Some(&b22)],
        ],
    )
}

/// `[[B·A11·C, B·A12], [A21·C, A22]]` for `B` `l×k`, `C` `k×l`.
pub fn sandwich(b: &Matrix, a: &PartitionedMatrix, c: &Matrix) -> Matrix {
    let (l, p) = (b.rows(), a.trailing());
    let d11 = &(b * &a.a11()) * c;
    let d12 = b * &a.a12();
    let d21 = &a.a21() * c;
    let a22 = a.a22();
    grid(&[l, p], &[vec![Some(&d11), Some(&d12)], vec![Some(&d21), Some(&a22)]])
}

/// `[[0, I], [I, −A]]`.
pub fn inv_as_schur(a: &Matrix, unit: bool) -> Matrix {
    let m = a.rows();
    let i = unit_block(m, unit);
    let na = -a;
    grid(&[m, m], &[vec![None, Some(&i)], vec![Some(&i), Some(&na)]])
}

/// `[[0_k, I_k, 0], [I_k, −A11, −A12], [0, −A21, −A22]]`.
pub fn inv_of_schur(a: &PartitionedMatrix, unit: bool) -> Matrix {
    let k = a.split();
    let i = unit_block(k, unit);
    let upper = zeros(k, k).direct_sum(&-a.matrix());
    let mut m = upper;
    m.set_block(0, k, &i);
    m.set_block(k, 0, &i);
    m
}

/// `A ⊗ B`.
pub fn kron_right(a: &PartitionedMatrix, b: &Matrix) -> Matrix {
    a.matrix().kron(b)
}

/// `Q = diag(P(l, m), I_{(n−l)·m})`, the permutation aligning the leading
/// rows of `B ⊗ A` with `A ⊗ B11`.
pub fn kron_left_permutation(m: usize, n: usize, l: usize) -> Matrix {
    commutation_matrix(l, m).direct_sum(&Matrix::identity((n - l) * m))
}

/// `Qᵀ (B ⊗ A) Q` with `A` constant `m×m` and `B` split at `l`.
pub fn kron_left(a: &Matrix, b: &PartitionedMatrix) -> Matrix {
    let q = kron_left_permutation(a.rows(), b.side(), b.split());
    &(&q.transpose() * &b.matrix().kron(a)) * &q
}

/// `H` sandwiched by `diag(E, I)`, `diag(F, I)`, where
/// `H = [[a11·D11, 0, A12⊗D11], [0, 0_{n−r}, 0], [A21⊗D11, 0, A22⊗D11]]`.
/// `a` must have a `1×1` leading block.
pub fn scalar_product(a: &PartitionedMatrix, fct: &RankFactorization) -> Matrix {
    let n = fct.e.rows();
    let r = fct.r;
    let t = a.trailing() * r;
    let d = &fct.d11;
    let h11 = a.a11().kron(d);
    let h13 = a.a12().kron(d);
    let h31 = a.a21().kron(d);
    let h33 = a.a22().kron(d);
    let h = grid(
        &[r, n - r, t],
        &[vec![Some(&h11), None, Some(&h13)], vec![None, None, None], vec![Some(&h31), None, Some(&h33)]],
    );
    let left = fct.e.direct_sum(&Matrix::identity(t));
    let right = fct.f.direct_sum(&Matrix::identity(t));
    &(&left * &h) * &right
}

/// `[[A11, 0, A12], [0, 0_p, I_p], [A21, −I_p, A22]]` (plain) or with the
/// `(2,3)` block negated (`signed`, the `J·C` form).
pub fn ppt2(a: &PartitionedMatrix, signed: bool, unit: bool) -> Matrix {
    let (k, p) = (a.split(), a.trailing());
    let (a11, a12, a21, a22) = (a.a11(), a.a12(), a.a21(), a.a22());
    let i = unit_block(p, unit);
    let ni = -&i;
    let i23 = if signed { &ni } else { &i };
    grid(
        &[k, p, p],
        &[vec![Some(&a11), None, Some(&a12)], vec![None, None, Some(i23)], vec![Some(&a21), Some(&ni), Some(&a22)]],
    )
}

/// `[[0_k, 0, I_k], [0, A22, A21], [−I_k, A12, A11]]` (plain) or with the
/// `(1,3)` block negated (`signed`, the `K·D` form).
pub fn ppt1(a: &PartitionedMatrix, signed: bool, unit: bool) -> Matrix {
    let (k, p) = (a.split(), a.trailing());
    let (a11, a12, a21, a22) = (a.a11(), a.a12(), a.a21(), a.a22());
    let i = unit_block(k, unit);
    let ni = -&i;
    let i13 = if signed { &ni } else { &i };
    grid(
        &[k, p, k],
        &[vec![None, None, Some(i13)], vec![None, Some(&a22), Some(&a21)], vec![Some(&ni), Some(&a12), Some(&a11)]],
    )
}
