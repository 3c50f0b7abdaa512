use pencilforge_arith::GR;

use crate::matrix::Matrix;
use crate::BlockError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorMode {
    Plain,
    Real,
    Symmetric,
    Hermitian,
    RealSymmetric,
}

impl FactorMode {
    /// Strongest mode the matrix satisfies, preferring congruence forms.
    pub fn detect(b: &Matrix) -> FactorMode {
        let real = b.is_real();
        if b.is_symmetric() {
            if real {
                FactorMode::RealSymmetric
            } else {
                FactorMode::Symmetric
            }
        } else if b.is_hermitian() {
            FactorMode::Hermitian
        } else if real {
            FactorMode::Real
        } else {
            FactorMode::Plain
        }
    }
}

/// `B = E·(D11 ⊕ 0)·F` with `E`, `F` invertible and `r = rank(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFactorization {
    pub e: Matrix,
    pub d11: Matrix,
    pub f: Matrix,
    pub r: usize,
}

impl RankFactorization {
    /// `E·(D11 ⊕ 0)·F`.
    pub fn product(&self) -> Matrix {
        let n = self.e.rows();
        let d = self.d11.direct_sum(&Matrix::zeros(n - self.r, n - self.r));
        &(&self.e * &d) * &self.f
    }
}

/// Rank factorization respecting `mode`.
///
/// Plain/real: row reduction with column pivoting, `D11 = I_r`.
/// Symmetric/Hermitian: congruence elimination `T·B·Tᵀ` (resp. `T·B·T*`)
/// to a diagonal, so `F = T⁻ᵀ` (resp. `T⁻*`) and `E = Fᵀ` (resp. `F*`).
/// `D11` is then diagonal but not normalized to ±1.
pub fn rank_factorize(b: &Matrix, mode: FactorMode) -> Result<RankFactorization, BlockError> {
    if !b.is_square() {
        return Err(BlockError::NotSquare);
    }
    let unsat = |why: &str| Err(BlockError::ModeUnsatisfiable(format!("{mode:?}: {why}")));
    match mode {
        FactorMode::Plain => Ok(row_factor(b)),
        FactorMode::Real => {
            if !b.is_real() {
                return unsat("matrix has non-real entries");
            }
            Ok(row_factor(b))
        }
        FactorMode::Symmetric => {
            if !b.is_symmetric() {
                return unsat("matrix is not symmetric");
            }
            Ok(congruence_factor(b, false))
        }
        FactorMode::RealSymmetric => {
            if !b.is_symmetric() || !b.is_real() {
                return unsat("matrix is not real symmetric");
            }
            Ok(congruence_factor(b, false))
        }
        FactorMode::Hermitian => {
            if !b.is_hermitian() {
                return unsat("matrix is not Hermitian");
            }
            Ok(congruence_factor(b, true))
        }
    }
}

fn row_factor(b: &Matrix) -> RankFactorization {
    let n = b.rows();
    // L·B·Pc = [[I_r, X], [0, 0]]  ⇒  B = L⁻¹·(I_r ⊕ 0)·[[I_r, X], [0, I]]·Pcᵀ
    let mut m = b.clone();
    let mut l = Matrix::identity(n);
    let mut cols: Vec<usize> = (0..n).collect();
    let mut r = 0;
    while r < n {
        let Some((pr, pc)) = (r..n).flat_map(|c| (r..n).map(move |rr| (rr, c))).find(|&(rr, c)| !m.get(rr, cols[c]).is_zero())
        else {
            break;
        };
        cols.swap(r, pc);
        m.swap_rows(r, pr);
        l.swap_rows(r, pr);
        let c = cols[r];
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        for j in 0..n {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
            let v = l.get(r, j) * &inv;
            l.set(r, j, v);
        }
        for rr in 0..n {
            if rr == r {
                continue;
            }
            let f = m.get(rr, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = m.get(rr, j) - &(&f * m.get(r, j));
                m.set(rr, j, v);
                let v = l.get(rr, j) - &(&f * l.get(r, j));
                l.set(rr, j, v);
            }
        }
        r += 1;
    }
    // reduced = m with columns permuted by `cols`
    let mut g = Matrix::identity(n);
    for i in 0..r {
        for (j, &c) in cols.iter().enumerate().skip(r) {
            g.set(i, j, m.get(i, c).clone());
        }
    }
    // Pcᵀ maps permuted column index j back to cols[j]
    let mut pct = Matrix::zeros(n, n);
    for (j, &c) in cols.iter().enumerate() {
        pct.set(j, c, GR::one());
    }
    let e = l.inverse().expect("row operations are invertible");
    RankFactorization { e, d11: Matrix::identity(r), f: &g * &pct, r }
}

fn congruence_factor(b: &Matrix, hermitian: bool) -> RankFactorization {
    let n = b.rows();
    let cj = |v: &GR| if hermitian { v.conj() } else { v.clone() };
    let mut m = b.clone();
    let mut t = Matrix::identity(n);
    // row op on m and t: row_i += c·row_j ; matching column op on m: col_i += cj(c)·col_j
    let add_row_col = |m: &mut Matrix, t: &mut Matrix, i: usize, j: usize, c: &GR| {
        for k in 0..n {
            let v = m.get(i, k) + &(c * m.get(j, k));
            m.set(i, k, v);
            let v = t.get(i, k) + &(c * t.get(j, k));
            t.set(i, k, v);
        }
        let cc = cj(c);
        for k in 0..n {
            let v = m.get(k, i) + &(&cc * m.get(k, j));
            m.set(k, i, v);
        }
    };
    let swap = |m: &mut Matrix, t: &mut Matrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        m.swap_rows(i, j);
        t.swap_rows(i, j);
        let mut tm = m.transpose();
        tm.swap_rows(i, j);
        *m = tm.transpose();
    };
    let mut r = 0;
    while r < n {
        if let Some(p) = (r..n).find(|&i| !m.get(i, i).is_zero()) {
            swap(&mut m, &mut t, r, p);
        } else {
            let Some((i, j)) = (r..n).flat_map(|i| (r..n).map(move |j| (i, j))).find(|&(i, j)| i != j && !m.get(i, j).is_zero())
            else {
                break;
            };
            // zero diagonal: new m_ii = c·m_ji + cj(c)·m_ij, which is 2·m_ij for
            // c = 1 (symmetric) and 2|m_ij|² for c = m_ij (Hermitian)
            let c = if hermitian { m.get(i, j).clone() } else { GR::one() };
            add_row_col(&mut m, &mut t, i, j, &c);
            swap(&mut m, &mut t, r, i);
        }
        let piv_inv = m.get(r, r).inv().expect("nonzero pivot");
        for i in r + 1..n {
            let c = -(m.get(i, r) * &piv_inv);
            if !c.is_zero() {
                add_row_col(&mut m, &mut t, i, r, &c);
            }
        }
        r += 1;
    }
    let d11 = m.sub_matrix(0, r, 0, r);
    let tinv = t.inverse().expect("congruence transform is invertible");
    let (e, f) = if hermitian { (tinv.clone(), tinv.adjoint()) } else { (tinv.clone(), tinv.transpose()) };
    RankFactorization { e, d11, f, r }
}
