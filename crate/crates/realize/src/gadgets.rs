use pencilforge_arith::GR;
use pencilforge_blockmat::Matrix;

use crate::{Pencil, Realization, RealizeError};

fn q(a: i64, b: i64) -> GR {
    GR::ratio(a, b)
}

fn mat(rows: &[&[(i64, i64)]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect()).expect("rectangular literal")
}

fn check_var(j: usize, nvars: usize) -> Result<(), RealizeError> {
    if j >= nvars {
        return Err(RealizeError::VariableOutOfRange { var: j, nvars });
    }
    Ok(())
}

/// `[z_j²] = [[0, z_j], [z_j, −1]] / [−1]`. `j` is 0-based.
pub fn realize_square(j: usize, nvars: usize) -> Result<Realization, RealizeError> {
    check_var(j, nvars)?;
    let mut p = Pencil::constant(Matrix::from_i64(&[&[0, 0], &[0, -1]]), nvars);
    p.set_coeff(j + 1, Matrix::from_i64(&[&[0, 1], &[1, 0]]));
    let mut r = Realization::new(p, 1, "square")?;
    r.certificate = Some(vec![GR::zero(); nvars]);
    Ok(r)
}

/// `[z_j z_l]` through the 3×3 pencil with `A₂₂ = diag(−1/4, 1/4)`.
pub fn realize_simple_product(j: usize, l: usize, nvars: usize) -> Result<Realization, RealizeError> {
    check_var(j, nvars)?;
    check_var(l, nvars)?;
    if j == l {
        return Err(RealizeError::SameVariable(j));
    }
    let mut p = Pencil::constant(mat(&[&[(0, 1), (0, 1), (0, 1)], &[(0, 1), (-1, 4), (0, 1)], &[(0, 1), (0, 1), (1, 4)]]), nvars);
    p.set_coeff(j + 1, mat(&[&[(0, 1), (1, 4), (-1, 4)], &[(1, 4), (0, 1), (0, 1)], &[(-1, 4), (0, 1), (0, 1)]]));
    p.set_coeff(l + 1, mat(&[&[(0, 1), (1, 4), (1, 4)], &[(1, 4), (0, 1), (0, 1)], &[(1, 4), (0, 1), (0, 1)]]));
    let mut r = Realization::new(p, 1, "simple_product")?;
    r.certificate = Some(vec![GR::zero(); nvars]);
    Ok(r)
}

/// Hand-entered pencils from the worked examples, used as regression
/// fixtures.
pub mod fixtures {
    use super::*;

    fn fixture(coeffs: Vec<Matrix>, split: usize, name: &str) -> Realization {
        Realization::new(Pencil::new(coeffs).expect("square coefficients"), split, name).expect("valid split")
    }

    /// 4×4 realization of `z₂/z₁`, split 1.
    pub fn z2_over_z1() -> Realization {
        let z = (0, 1);
        let a0 = mat(&[&[z, z, z, z], &[z, z, z, z], &[z, z, (1, 4), z], &[z, z, z, (-1, 4)]]);
        let a1 = mat(&[&[z, z, z, z], &[z, z, (-1, 4), (1, 4)], &[z, (-1, 4), z, z], &[z, (1, 4), z, z]]);
        let a2 = mat(&[&[z, (1, 1), z, z], &[(1, 1), z, (-1, 4), (-1, 4)], &[z, (-1, 4), z, z], &[z, (-1, 4), z, z]]);
        fixture(vec![a0, a1, a2], 1, "fixture:z2/z1")
    }

    /// Homogeneous 3×3 realization of `z₂z₃/z₁` with `A₀ = 0`.
    pub fn z2z3_over_z1() -> Realization {
        let z = (0, 1);
        let a0 = Matrix::zeros(3, 3);
        let a1 = mat(&[&[z, z, z], &[z, (-1, 4), z], &[z, z, (1, 4)]]);
        let a2 = mat(&[&[z, (1, 4), (-1, 4)], &[(1, 4), z, z], &[(-1, 4), z, z]]);
        let a3 = mat(&[&[z, (1, 4), (1, 4)], &[(1, 4), z, z], &[(1, 4), z, z]]);
        fixture(vec![a0, a1, a2, a3], 1, "fixture:z2*z3/z1")
    }

    /// 4×4 realization `D(z, w)` of `(9 + 55w₁)/(3 + 3z₁)`, variables `(z₁, w₁)`.
    /// Entries follow the block form `D(z, w)`, which carries `55w₁` in the
    /// border.
    pub fn kron_example() -> Realization {
        let z = (0, 1);
        let d0 = mat(&[&[z, (9, 1), z, z], &[(9, 1), (-27, 1), z, z], &[z, z, (165, 4), z], &[z, z, z, (-165, 4)]]);
        let d1 = mat(&[&[z, z, z, z], &[z, (-27, 1), (-165, 4), (165, 4)], &[z, (-165, 4), z, z], &[z, (165, 4), z, z]]);
        let d2 =
            mat(&[&[z, (55, 1), z, z], &[(55, 1), (-165, 1), (-165, 4), (-165, 4)], &[z, (-165, 4), z, z], &[z, (-165, 4), z, z]]);
        fixture(vec![d0, d1, d2], 1, "fixture:(9+55w1)/(3+3z1)")
    }

    /// `[[z₁, 0], [0, 1]]` split 1: realizes the homogeneous function `z₁`
    /// although `A₀ ≠ 0`.
    pub fn homogeneous_with_constant_term() -> Realization {
        fixture(vec![Matrix::from_i64(&[&[0, 0], &[0, 1]]), Matrix::from_i64(&[&[1, 0], &[0, 0]])], 1, "fixture:z1")
    }

    /// `[[0, 1], [1, −(3 + 3z₁)]]` split 1, realizing `1/(3 + 3z₁)`, over `(z₁, w₁)`.
    pub fn inverse_example() -> Realization {
        let a0 = Matrix::from_i64(&[&[0, 1], &[1, -3]]);
        let a1 = Matrix::from_i64(&[&[0, 0], &[0, -3]]);
        fixture(vec![a0, a1, Matrix::zeros(2, 2)], 1, "fixture:1/(3+3z1)")
    }
}
