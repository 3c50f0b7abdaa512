use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use pencilforge_arith::GR;

use crate::BlockError;

/// Dense row-major matrix over the Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GR>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GR::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { GR::one() } else { GR::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> GR) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<GR>) -> Result<Self, BlockError> {
        if data.len() != rows * cols {
            return Err(BlockError::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    /// Rows of integers; all rows must have equal length.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| GR::from_int(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<GR>>) -> Result<Self, BlockError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(BlockError::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn scalar(v: GR) -> Self {
        Self { rows: 1, cols: 1, data: vec![v] }
    }

    pub fn diag(values: &[GR]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i].clone() } else { GR::zero() })
    }

    /// `E_ij` of the given shape.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, GR::one());
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[GR] {
        &self.data
    }

    pub fn into_data(self) -> Vec<GR> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &GR {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GR) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[GR] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GR::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GR::is_real)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..=i).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn map(&self, f: impl Fn(&GR) -> GR) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Self {
        self.map(GR::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, c: &GR) -> Self {
        self.map(|v| v * c)
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<(), BlockError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(BlockError::ShapeMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, BlockError> {
        self.same_shape(other, "add")?;
        Ok(Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, BlockError> {
        self.same_shape(other, "sub")?;
        Ok(Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, BlockError> {
        if self.cols != other.rows {
            return Err(BlockError::ShapeMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Copy of rows `r0..r1`, columns `c0..c1`.
    pub fn sub_matrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Write `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Permute rows and columns simultaneously: `out[i][j] = self[p[i]][p[j]]`.
    pub fn permute_sym(&self, p: &[usize]) -> Self {
        Self::from_fn(p.len(), p.len(), |i, j| self.get(p[i], p[j]).clone())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// Assemble from a grid of blocks. `None` is a zero block; every block
    /// row/column must agree with `row_sizes`/`col_sizes`.
    pub fn from_blocks(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&Matrix>>]) -> Result<Self, BlockError> {
        let total_r: usize = row_sizes.iter().sum();
        let total_c: usize = col_sizes.iter().sum();
        let mut out = Self::zeros(total_r, total_c);
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    if b.rows != rs || b.cols != cs {
                        return Err(BlockError::ShapeMismatch(format!(
                            "block ({bi},{bj}) is {}x{}, expected {rs}x{cs}",
                            b.rows, b.cols
                        )));
                    }
                    out.set_block(r0, c0, b);
                }
                c0 += cs;
            }
            r0 += rs;
        }
        Ok(out)
    }

    /// `A ⊗ B = [a_ij B]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (other.rows, other.cols);
        Self::from_fn(self.rows * p, self.cols * q, |i, j| self.get(i / p, j / q) * other.get(i % p, j % q))
    }

    /// Row echelon reduction; returns `(rank, determinant)` for square input.
    fn eliminate(&self) -> (usize, GR) {
        let mut m = self.clone();
        let mut rank = 0;
        let mut det = GR::one();
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                det = GR::zero();
                continue;
            };
            if p != rank {
                m.swap_rows(p, rank);
                det = -det;
            }
            let piv = m.get(rank, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in rank + 1..m.rows {
                let f = m.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for cc in c..m.cols {
                    let v = m.get(r, cc) - &(&f * m.get(rank, cc));
                    m.set(r, cc, v);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        (rank, det)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn det(&self) -> Result<GR, BlockError> {
        if !self.is_square() {
            return Err(BlockError::NotSquare);
        }
        if self.rows == 0 {
            return Ok(GR::one());
        }
        let (rank, det) = self.eliminate();
        Ok(if rank < self.rows { GR::zero() } else { det })
    }

    pub fn is_invertible(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        crate::modular::certainly_invertible(self).unwrap_or_else(|| self.rank() == self.rows)
    }

    /// `X` with `self·X = rhs`, by elimination on `[self | rhs]` and back
    /// substitution.
    pub fn solve(&self, rhs: &Matrix) -> Result<Self, BlockError> {
        if !self.is_square() {
            return Err(BlockError::NotSquare);
        }
        let n = self.rows;
        if rhs.rows != n {
            return Err(BlockError::ShapeMismatch(format!("right-hand side has {} rows, expected {n}", rhs.rows)));
        }
        let w = n + rhs.cols;
        let mut a = Self::from_fn(n, w, |i, j| if j < n { self.get(i, j).clone() } else { rhs.get(i, j - n).clone() });
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(BlockError::SingularMatrix)?;
            a.swap_rows(p, c);
            let inv = a.get(c, c).inv().expect("nonzero pivot");
            for r in c + 1..n {
                let f = a.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..w {
                    let v = a.get(r, j) - &(&f * a.get(c, j));
                    a.set(r, j, v);
                }
            }
        }
        let mut x = Self::zeros(n, rhs.cols);
        for r in (0..n).rev() {
            let inv = a.get(r, r).inv().expect("nonzero pivot");
            for j in 0..rhs.cols {
                let mut v = a.get(r, n + j).clone();
                for t in r + 1..n {
                    let u = a.get(r, t);
                    if !u.is_zero() {
                        v = &v - &(u * x.get(t, j));
                    }
                }
                x.set(r, j, &v * &inv);
            }
        }
        Ok(x)
    }

    /// Exact inverse by Gauss-Jordan elimination, first nonzero pivot by row order.
    pub fn inverse(&self) -> Result<Self, BlockError> {
        if !self.is_square() {
            return Err(BlockError::NotSquare);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(BlockError::SingularMatrix)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let pinv = a.get(c, c).inv().expect("nonzero pivot");
            for j in 0..n {
                let v = a.get(c, j) * &pinv;
                a.set(c, j, v);
                let v = inv.get(c, j) * &pinv;
                inv.set(c, j, v);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - &(&f * a.get(c, j));
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &(&f * inv.get(c, j));
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }
}

/// Exact inverse; `SingularMatrix` when none exists.
pub fn mat_inverse(a: &Matrix) -> Result<Matrix, BlockError> {
    a.inverse()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
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

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Operator forms panic on shape mismatch; internal constructions check shapes up front.
impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix shapes differ")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix shapes differ")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix shapes incompatible")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|v| -v)
    }
}
