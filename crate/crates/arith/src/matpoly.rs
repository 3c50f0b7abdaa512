use std::fmt;

use crate::poly::MultiPoly;
use crate::scalar::GR;
use crate::ArithError;

/// Square `k×k` grid of polynomials sharing one variable count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixPoly {
    k: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl MatrixPoly {
    pub fn zero(k: usize, nvars: usize) -> Self {
        Self { k, nvars, entries: vec![MultiPoly::zero(nvars); k * k] }
    }

    pub fn identity(k: usize, nvars: usize) -> Self {
        Self::from_fn(k, nvars, |i, j| if i == j { MultiPoly::one(nvars) } else { MultiPoly::zero(nvars) })
    }

    pub fn from_fn(k: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let p = f(i, j);
                assert_eq!(p.nvars(), nvars, "entry variable count differs");
                entries.push(p);
            }
        }
        Self { k, nvars, entries }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self, ArithError> {
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(ArithError::NotSquare);
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(ArithError::VarCountMismatch { left: nvars, right: p.nvars() });
                }
                entries.push(p);
            }
        }
        Ok(Self { k, nvars, entries })
    }

    /// 1×1 matrix holding `p`.
    pub fn scalar(p: MultiPoly) -> Self {
        Self { k: 1, nvars: p.nvars(), entries: vec![p] }
    }

    pub fn side(&self) -> usize {
        self.k
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.k + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.k + j] = p;
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        Self { k: self.k, nvars: self.nvars, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.k, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Self {
        self.map(MultiPoly::conj)
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale_poly(&self, p: &MultiPoly) -> Self {
        self.map(|e| e * p)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_shape(other)?;
        Ok(Self::from_fn(self.k, self.nvars, |i, j| self.get(i, j) + other.get(i, j)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_shape(other)?;
        Ok(Self::from_fn(self.k, self.nvars, |i, j| self.get(i, j) - other.get(i, j)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_shape(other)?;
        let k = self.k;
        Ok(Self::from_fn(k, self.nvars, |i, j| {
            let mut acc = MultiPoly::zero(self.nvars);
            for l in 0..k {
                let a = self.get(i, l);
                let b = other.get(l, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        }))
    }

    fn check_shape(&self, other: &Self) -> Result<(), ArithError> {
        if self.nvars != other.nvars {
            return Err(ArithError::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        if self.k != other.k {
            return Err(ArithError::ShapeMismatch { left: self.k, right: other.k });
        }
        Ok(())
    }

    /// Evaluate entrywise at a point; row-major values.
    pub fn eval(&self, point: &[GR]) -> Result<Vec<GR>, ArithError> {
        self.entries.iter().map(|p| p.eval(point)).collect()
    }

    pub fn substitute(&self, j: usize, value: &GR) -> Self {
        self.map(|p| p.substitute(j, value))
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let rows: Vec<usize> = (0..self.k).filter(|&r| r != skip_row).collect();
        let cols: Vec<usize> = (0..self.k).filter(|&c| c != skip_col).collect();
        Self::from_fn(self.k - 1, self.nvars, |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Determinant: cofactor expansion for side ≤ 4, fraction-free
    /// (Bareiss) elimination with exact polynomial quotients beyond that.
    pub fn det(&self) -> MultiPoly {
        match self.k {
            0 => MultiPoly::one(self.nvars),
            1 => self.get(0, 0).clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            k if k <= 4 => {
                let mut acc = MultiPoly::zero(self.nvars);
                for j in 0..k {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let t = a * &self.minor(0, j).det();
                    acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                acc
            }
            _ => self.bareiss_det(),
        }
    }

    fn bareiss_det(&self) -> MultiPoly {
        let k = self.k;
        let mut m: Vec<Vec<MultiPoly>> = (0..k).map(|i| (0..k).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = MultiPoly::one(self.nvars);
        let mut negate = false;
        for p in 0..k - 1 {
            if m[p][p].is_zero() {
                match (p + 1..k).find(|&r| !m[r][p].is_zero()) {
                    Some(r) => {
                        m.swap(p, r);
                        negate = !negate;
                    }
                    None => return MultiPoly::zero(self.nvars),
                }
            }
            for i in p + 1..k {
                for j in p + 1..k {
                    let num = &(&m[p][p] * &m[i][j]) - &(&m[i][p] * &m[p][j]);
                    m[i][j] = num.exact_div(&prev).expect("Bareiss step divides exactly");
                }
                m[i][p] = MultiPoly::zero(self.nvars);
            }
            prev = m[p][p].clone();
        }
        let d = m[k - 1][k - 1].clone();
        if negate {
            -&d
        } else {
            d
        }
    }

    /// Adjugate (classical adjoint): `Q·adj(Q) = det(Q)·I`.
    pub fn adjugate(&self) -> Self {
        let k = self.k;
        if k == 0 {
            return self.clone();
        }
        if k == 1 {
            return Self::identity(1, self.nvars);
        }
        Self::from_fn(k, self.nvars, |i, j| {
            let c = self.minor(j, i).det();
            if (i + j) % 2 == 0 {
                c
            } else {
                -&c
            }
        })
    }

    pub fn det_adj(&self) -> (MultiPoly, Self) {
        (self.det(), self.adjugate())
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.entries.iter().all(MultiPoly::has_real_coeffs)
    }
}

impl fmt::Debug for MatrixPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.k {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.k {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
