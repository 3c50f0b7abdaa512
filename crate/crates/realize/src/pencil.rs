use pencilforge_arith::{MatrixPoly, MultiPoly, SymmetryFlags, GR};
use pencilforge_blockmat::{schur, Matrix, PartitionedMatrix};

use crate::RealizeError;

/// `A(z) = A₀ + z₁A₁ + ⋯ + zₙAₙ` with square `side × side` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    nvars: usize,
    side: usize,
    coeffs: Vec<Matrix>,
}

impl Pencil {
    pub fn new(coeffs: Vec<Matrix>) -> Result<Self, RealizeError> {
        let Some(first) = coeffs.first() else {
            return Err(RealizeError::ShapeMismatch("a pencil needs at least the constant coefficient".into()));
        };
        let side = first.rows();
        if coeffs.iter().any(|c| c.rows() != side || c.cols() != side) {
            return Err(RealizeError::ShapeMismatch(format!("coefficients must all be {side}x{side}")));
        }
        Ok(Self { nvars: coeffs.len() - 1, side, coeffs })
    }

    pub fn zero(side: usize, nvars: usize) -> Self {
        Self { nvars, side, coeffs: vec![Matrix::zeros(side, side); nvars + 1] }
    }

    pub fn constant(m: Matrix, nvars: usize) -> Self {
        let side = m.rows();
        let mut coeffs = vec![Matrix::zeros(side, side); nvars + 1];
        coeffs[0] = m;
        Self { nvars, side, coeffs }
    }

    /// Pencil of a matrix polynomial of total degree at most one.
    pub fn from_matrix_poly(p: &MatrixPoly) -> Result<Self, RealizeError> {
        let (k, n) = (p.side(), p.nvars());
        let mut out = Self::zero(k, n);
        for r in 0..k {
            for c in 0..k {
                for (e, v) in p.get(r, c).terms() {
                    let deg: u32 = e.iter().sum();
                    let slot = match deg {
                        0 => 0,
                        1 => 1 + e.iter().position(|&x| x == 1).unwrap(),
                        _ => return Err(RealizeError::NotLinear),
                    };
                    out.coeffs[slot].set(r, c, v.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn to_matrix_poly(&self) -> MatrixPoly {
        self.block_poly(0, 0, self.side)
    }

    /// The `size × size` block of `A(z)` at `(r0, c0)` as a polynomial matrix.
    pub fn block_poly(&self, r0: usize, c0: usize, size: usize) -> MatrixPoly {
        let n = self.nvars;
        MatrixPoly::from_fn(size, n, |i, j| {
            let mut p = MultiPoly::constant(n, self.coeffs[0].get(r0 + i, c0 + j).clone());
            for v in 1..=n {
                let c = self.coeffs[v].get(r0 + i, c0 + j);
                if !c.is_zero() {
                    p = &p + &MultiPoly::var(n, v - 1).scale(c);
                }
            }
            p
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// `A₀` for `j = 0`, else the coefficient of `z_j` (1-based slot).
    pub fn coeff(&self, slot: usize) -> &Matrix {
        &self.coeffs[slot]
    }

    pub fn set_coeff(&mut self, slot: usize, m: Matrix) {
        assert_eq!((m.rows(), m.cols()), (self.side, self.side));
        self.coeffs[slot] = m;
    }

    pub fn map(&self, f: impl Fn(&Matrix) -> Matrix) -> Self {
        let coeffs: Vec<Matrix> = self.coeffs.iter().map(f).collect();
        let side = coeffs[0].rows();
        Self { nvars: self.nvars, side, coeffs }
    }

    /// Like [`Pencil::map`]; the flag is true for the constant slot.
    pub fn map_slots(&self, f: impl Fn(&Matrix, bool) -> Matrix) -> Self {
        let coeffs: Vec<Matrix> = self.coeffs.iter().enumerate().map(|(j, m)| f(m, j == 0)).collect();
        let side = coeffs[0].rows();
        Self { nvars: self.nvars, side, coeffs }
    }

    /// Coefficient-wise combination; `unit` is true for the constant slot.
    pub fn zip_with(&self, other: &Pencil, f: impl Fn(&Matrix, &Matrix, bool) -> Matrix) -> Self {
        assert_eq!(self.nvars, other.nvars, "pencils over different variable sets");
        let coeffs: Vec<Matrix> =
            self.coeffs.iter().zip(&other.coeffs).enumerate().map(|(j, (a, b))| f(a, b, j == 0)).collect();
        let side = coeffs[0].rows();
        Self { nvars: self.nvars, side, coeffs }
    }

    pub fn eval(&self, point: &[GR]) -> Result<Matrix, RealizeError> {
        if point.len() != self.nvars {
            return Err(RealizeError::ShapeMismatch(format!("point has {} coordinates, pencil has {} variables", point.len(), self.nvars)));
        }
        let mut m = self.coeffs[0].clone();
        for (c, z) in self.coeffs[1..].iter().zip(point) {
            if !z.is_zero() && !c.is_zero() {
                m = &m + &c.scale(z);
            }
        }
        Ok(m)
    }

    /// `A(z)` with `z_j = 1` folded into the constant term and slot `j`
    /// (0-based variable) removed.
    pub fn fold_variable(&self, j: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        let folded = coeffs.remove(j + 1);
        coeffs[0] = &coeffs[0] + &folded;
        Self { nvars: self.nvars - 1, side: self.side, coeffs }
    }

    /// Entrywise structure of the coefficients; `homogeneous` means `A₀ = 0`.
    pub fn structure(&self) -> SymmetryFlags {
        SymmetryFlags {
            real: self.coeffs.iter().all(Matrix::is_real),
            symmetric: self.coeffs.iter().all(Matrix::is_symmetric),
            hermitian: self.coeffs.iter().all(Matrix::is_hermitian),
            homogeneous: self.coeffs[0].is_zero(),
        }
    }
}

/// A pencil together with the split `k` such that `f(z) = A(z)/A₂₂(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub pencil: Pencil,
    pub split: usize,
    /// Structures the construction guarantees.
    pub flags: SymmetryFlags,
    /// Names of the constructions applied, innermost first.
    pub provenance: Vec<String>,
    /// A point where `A₂₂` is invertible, if one has been recorded.
    pub certificate: Option<Vec<GR>>,
}

impl Realization {
    pub fn new(pencil: Pencil, split: usize, provenance: impl Into<String>) -> Result<Self, RealizeError> {
        if split == 0 || split > pencil.side() {
            return Err(RealizeError::ShapeMismatch(format!("split {split} outside 1..={}", pencil.side())));
        }
        let flags = pencil.structure();
        Ok(Self { pencil, split, flags, provenance: vec![provenance.into()], certificate: None })
    }

    /// `A(z)` as its own Schur complement (empty trailing block).
    pub fn degenerate(pencil: Pencil, provenance: impl Into<String>) -> Self {
        let split = pencil.side();
        let flags = pencil.structure();
        let certificate = Some(vec![GR::zero(); pencil.nvars()]);
        Self { pencil, split, flags, provenance: vec![provenance.into()], certificate }
    }

    pub fn nvars(&self) -> usize {
        self.pencil.nvars()
    }

    pub fn side(&self) -> usize {
        self.pencil.side()
    }

    /// Size of the realized function.
    pub fn k(&self) -> usize {
        self.split
    }

    pub fn trailing(&self) -> usize {
        self.side() - self.split
    }

    pub fn is_degenerate(&self) -> bool {
        self.split == self.side()
    }

    pub fn coeff_partitioned(&self, slot: usize) -> PartitionedMatrix {
        PartitionedMatrix::new(self.pencil.coeff(slot).clone(), self.split).expect("split validated at construction")
    }

    pub fn at(&self, point: &[GR]) -> Result<PartitionedMatrix, RealizeError> {
        Ok(PartitionedMatrix::new(self.pencil.eval(point)?, self.split).expect("split validated at construction"))
    }

    /// `A(point)/A₂₂(point)`.
    pub fn eval(&self, point: &[GR]) -> Result<Matrix, RealizeError> {
        schur(&self.at(point)?).map_err(|_| RealizeError::SingularAtPoint)
    }

    /// `A₂₂(z)` as a polynomial matrix.
    pub fn a22_poly(&self) -> MatrixPoly {
        self.pencil.block_poly(self.split, self.split, self.trailing())
    }

    pub(crate) fn from_parts(pencil: Pencil, split: usize, flags: SymmetryFlags, provenance: Vec<String>) -> Self {
        Self { pencil, split, flags, provenance, certificate: None }
    }
}
