//! Classical realization formats written as Schur complements of linear
//! pencils.

use pencilforge_blockmat::Matrix;

use crate::lift::add;
use crate::{Pencil, Realization, RealizeError};

/// One classical realization format with its parameter matrices. Lists
/// indexed by variable hold the coefficient of `z₁, …, zₙ` in order.
#[derive(Clone, Debug)]
pub enum SpecialForm {
    /// `D + C(z₁I − A)⁻¹B`.
    Kalman { d: Matrix, c: Matrix, a: Matrix, b: Matrix },
    /// `D + C(z₁E − A)⁻¹B`.
    Descriptor { d: Matrix, c: Matrix, a: Matrix, b: Matrix, e: Matrix },
    /// `D + C(E − Σ z_jA_j)⁻¹B`.
    DescriptorMulti { d: Matrix, c: Matrix, b: Matrix, e: Matrix, a: Vec<Matrix> },
    /// `D + C(I − Z(z)A)⁻¹Z(z)B` with `Z(z) = [z₁I ⋯ zₙI]`; `a[j]`, `b[j]`
    /// are the row blocks of `A`, `B`.
    FornasiniMarchesini { d: Matrix, c: Matrix, a: Vec<Matrix>, b: Vec<Matrix> },
    /// `D + C(I − Z(z)A)⁻¹Z(z)B` with `Z(z) = diag(z₁I_{h₁}, …, zₙI_{hₙ})`.
    GivoneRoesser { d: Matrix, c: Matrix, a: Matrix, b: Matrix, blocks: Vec<usize> },
    /// `−uQ(z)⁻¹v` with `Q(z) = Q⁰ + Σ z_jQʲ`; `q[0]` is `Q⁰`.
    FormalLinear { u: Matrix, v: Matrix, q: Vec<Matrix> },
    /// `C(I − Σ z_jA_j)⁻¹B`.
    Recognizable { c: Matrix, b: Matrix, a: Vec<Matrix> },
    /// `D + C(I − Σ z_jA_j)⁻¹(Σ z_jB_j)`.
    CenteredAtZero { d: Matrix, c: Matrix, a: Vec<Matrix>, b: Vec<Matrix> },
    /// `r(z) + ℓ(z)ℓ(z)ᵀ + Λ(z)(J − A(z))⁻¹Λ(z)ᵀ` with `r = r₀ + r₁z₁`,
    /// `ℓ = Σ z_jℓ_j`, `Λ = Λ₀ + Σ z_jΛ_j`, `A = Σ z_jA_j`. `lambda[0]` is `Λ₀`.
    Butterfly { r0: Matrix, r1: Matrix, ell: Vec<Matrix>, lambda: Vec<Matrix>, j: Matrix, a: Vec<Matrix> },
}

fn shape(msg: impl Into<String>) -> RealizeError {
    RealizeError::ShapeMismatch(msg.into())
}

fn dims(m: &Matrix) -> (usize, usize) {
    (m.rows(), m.cols())
}

fn expect(m: &Matrix, rows: usize, cols: usize, name: &str) -> Result<(), RealizeError> {
    if dims(m) != (rows, cols) {
        return Err(shape(format!("{name} is {}x{}, expected {rows}x{cols}", m.rows(), m.cols())));
    }
    Ok(())
}

/// `[[tl, tr], [bl, br]]` with `None` for zero blocks.
fn block2(p: usize, s: usize, tl: Option<&Matrix>, tr: Option<&Matrix>, bl: Option<&Matrix>, br: Option<&Matrix>) -> Matrix {
    Matrix::from_blocks(&[p, s], &[p, s], &[vec![tl, tr], vec![bl, br]]).expect("checked block shapes")
}

/// `[[D, C], [B, X₀]] + Σ z_j [[0, 0], [B_j, X_j]]`, split at `D`'s size.
fn bordered(
    d: &Matrix,
    c: &Matrix,
    b0: Option<&Matrix>,
    x0: &Matrix,
    per_var: &[(Option<&Matrix>, Option<&Matrix>)],
    note: &str,
) -> Result<Realization, RealizeError> {
    let p = d.rows();
    let s = x0.rows();
    expect(d, p, p, "D")?;
    expect(c, p, s, "C")?;
    expect(x0, s, s, "trailing block")?;
    if let Some(b) = b0 {
        expect(b, s, p, "B")?;
    }
    let mut coeffs = vec![block2(p, s, Some(d), Some(c), b0, Some(x0))];
    for (bj, xj) in per_var {
        if let Some(b) = bj {
            expect(b, s, p, "B_j")?;
        }
        if let Some(x) = xj {
            expect(x, s, s, "A_j")?;
        }
        coeffs.push(block2(p, s, None, None, *bj, *xj));
    }
    let mut r = Realization::new(Pencil::new(coeffs)?, p, note)?;
    r.provenance = vec![format!("special:{note}")];
    Ok(r)
}

pub fn embed_special(form: &SpecialForm) -> Result<Realization, RealizeError> {
    match form {
        SpecialForm::Kalman { d, c, a, b } => {
            let s = a.rows();
            let neg = -&Matrix::identity(s);
            bordered(d, c, Some(b), a, &[(None, Some(&neg))], "kalman")
        }
        SpecialForm::Descriptor { d, c, a, b, e } => {
            let neg = -e;
            bordered(d, c, Some(b), a, &[(None, Some(&neg))], "descriptor")
        }
        SpecialForm::DescriptorMulti { d, c, b, e, a } => {
            let neg = -e;
            let per: Vec<_> = a.iter().map(|x| (None, Some(x))).collect();
            bordered(d, c, Some(b), &neg, &per, "descriptor_multi")
        }
        SpecialForm::FornasiniMarchesini { d, c, a, b } => {
            if a.len() != b.len() {
                return Err(shape("A and B need one block per variable"));
            }
            let neg = -&Matrix::identity(c.cols());
            let per: Vec<_> = a.iter().zip(b).map(|(x, y)| (Some(y), Some(x))).collect();
            bordered(d, c, None, &neg, &per, "fornasini_marchesini")
        }
        SpecialForm::GivoneRoesser { d, c, a, b, blocks } => {
            let h: usize = blocks.iter().sum();
            expect(a, h, h, "A")?;
            expect(b, h, d.rows(), "B")?;
            let mut per_a = Vec::new();
            let mut per_b = Vec::new();
            let mut start = 0;
            for &size in blocks {
                let keep = |m: &Matrix| {
                    Matrix::from_fn(m.rows(), m.cols(), |i, j| {
                        if (start..start + size).contains(&i) {
                            m.get(i, j).clone()
                        } else {
                            pencilforge_arith::GR::zero()
                        }
                    })
                };
                per_a.push(keep(a));
                per_b.push(keep(b));
                start += size;
            }
            let neg = -&Matrix::identity(h);
            let per: Vec<_> = per_a.iter().zip(&per_b).map(|(x, y)| (Some(y), Some(x))).collect();
            bordered(d, c, None, &neg, &per, "givone_roesser")
        }
        SpecialForm::FormalLinear { u, v, q } => {
            let Some(q0) = q.first() else { return Err(shape("Q needs its constant term")) };
            let zero = Matrix::zeros(u.rows(), u.rows());
            let per: Vec<_> = q[1..].iter().map(|x| (None, Some(x))).collect();
            bordered(&zero, u, Some(v), q0, &per, "formal_linear")
        }
        SpecialForm::Recognizable { c, b, a } => {
            let zero = Matrix::zeros(c.rows(), c.rows());
            let neg = -&Matrix::identity(c.cols());
            let per: Vec<_> = a.iter().map(|x| (None, Some(x))).collect();
            bordered(&zero, c, Some(b), &neg, &per, "recognizable")
        }
        SpecialForm::CenteredAtZero { d, c, a, b } => {
            if a.len() != b.len() {
                return Err(shape("A(z) and B(z) need one coefficient per variable"));
            }
            let neg = -&Matrix::identity(c.cols());
            let per: Vec<_> = a.iter().zip(b).map(|(x, y)| (Some(y), Some(x))).collect();
            bordered(d, c, None, &neg, &per, "centered_at_zero")
        }
        SpecialForm::Butterfly { r0, r1, ell, lambda, j, a } => butterfly(r0, r1, ell, lambda, j, a),
    }
}

/// Sum of `[[r, Λ], [Λᵀ, A − J]] / (A − J)` and `[[0, ℓ], [ℓᵀ, −I]] / (−I)`.
fn butterfly(
    r0: &Matrix,
    r1: &Matrix,
    ell: &[Matrix],
    lambda: &[Matrix],
    j: &Matrix,
    a: &[Matrix],
) -> Result<Realization, RealizeError> {
    let n = a.len();
    if ell.len() != n || lambda.len() != n + 1 {
        return Err(shape("butterfly needs ℓ_1..ℓ_n, Λ_0..Λ_n and A_1..A_n"));
    }
    if n == 0 {
        return Err(shape("butterfly needs at least one variable"));
    }
    let p = r0.rows();
    let s = j.rows();
    let t = ell[0].cols();
    expect(r0, p, p, "r_0")?;
    expect(r1, p, p, "r_1")?;
    expect(j, s, s, "J")?;
    if j * j != Matrix::identity(s) || !j.is_symmetric() {
        return Err(shape("J must be a symmetric involution"));
    }
    let zero_p = Matrix::zeros(p, p);
    let mut first = Vec::new();
    let mut second = Vec::new();
    for v in 0..=n {
        let lam = &lambda[v];
        expect(lam, p, s, "Λ_j")?;
        let r = match v {
            0 => r0,
            1 => r1,
            _ => &zero_p,
        };
        let trailing = if v == 0 { -j } else { a[v - 1].clone() };
        expect(&trailing, s, s, "A_j")?;
        let lt = lam.transpose();
        first.push(block2(p, s, Some(r), Some(lam), Some(&lt), Some(&trailing)));
        if v == 0 {
            let neg = -&Matrix::identity(t);
            second.push(block2(p, t, None, None, None, Some(&neg)));
        } else {
            let l = &ell[v - 1];
            expect(l, p, t, "ℓ_j")?;
            let l_t = l.transpose();
            second.push(block2(p, t, None, Some(l), Some(&l_t), None));
        }
    }
    let x = Realization::new(Pencil::new(first)?, p, "butterfly_core")?;
    let y = Realization::new(Pencil::new(second)?, p, "butterfly_rank")?;
    let mut r = add(&x, &y)?;
    r.provenance = vec!["special:butterfly".into()];
    Ok(r)
}
