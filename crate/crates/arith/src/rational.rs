use crate::matpoly::MatrixPoly;
use crate::poly::MultiPoly;
use crate::scalar::GR;
use crate::ArithError;

/// `f(z) = P(z) / q(z)` with `q ≢ 0`. No common factors are cancelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrixFunction {
    p: MatrixPoly,
    q: MultiPoly,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymmetryFlags {
    pub real: bool,
    pub symmetric: bool,
    pub hermitian: bool,
    pub homogeneous: bool,
}

impl SymmetryFlags {
    pub const NONE: SymmetryFlags = SymmetryFlags { real: false, symmetric: false, hermitian: false, homogeneous: false };

    /// True when every flag set in `other` is also set here.
    pub fn contains(&self, other: &SymmetryFlags) -> bool {
        (!other.real || self.real)
            && (!other.symmetric || self.symmetric)
            && (!other.hermitian || self.hermitian)
            && (!other.homogeneous || self.homogeneous)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.real {
            v.push("real");
        }
        if self.symmetric {
            v.push("symmetric");
        }
        if self.hermitian {
            v.push("hermitian");
        }
        if self.homogeneous {
            v.push("homogeneous");
        }
        v
    }
}

impl RationalMatrixFunction {
    pub fn new(p: MatrixPoly, q: MultiPoly) -> Result<Self, ArithError> {
        if q.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        if p.nvars() != q.nvars() {
            return Err(ArithError::VarCountMismatch { left: p.nvars(), right: q.nvars() });
        }
        Ok(Self { p, q })
    }

    /// Polynomial matrix with denominator 1.
    pub fn polynomial(p: MatrixPoly) -> Self {
        let q = MultiPoly::one(p.nvars());
        Self { p, q }
    }

    pub fn numerator(&self) -> &MatrixPoly {
        &self.p
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.q
    }

    pub fn side(&self) -> usize {
        self.p.side()
    }

    pub fn nvars(&self) -> usize {
        self.q.nvars()
    }

    /// Row-major value at `point`.
    pub fn eval(&self, point: &[GR]) -> Result<Vec<GR>, ArithError> {
        let q = self.q.eval(point)?;
        let qi = q.inv().map_err(|_| ArithError::DenominatorVanishes)?;
        Ok(self.p.eval(point)?.into_iter().map(|v| &v * &qi).collect())
    }

    /// `P̄·q − P·q̄ ≡ 0`.
    pub fn is_real(&self) -> bool {
        let qc = self.q.conj();
        self.p.conj().scale_poly(&self.q) == self.p.scale_poly(&qc)
    }

    /// `Pᵀ = P` (q is a common scalar factor).
    pub fn is_symmetric(&self) -> bool {
        self.p.transpose() == self.p
    }

    /// `P̄ᵀ·q − P·q̄ ≡ 0`.
    pub fn is_hermitian(&self) -> bool {
        let qc = self.q.conj();
        self.p.adjoint().scale_poly(&self.q) == self.p.scale_poly(&qc)
    }

    /// `P(λz)·q(z) − λ·P(z)·q(λz) ≡ 0`, compared grade by grade in λ:
    /// the λ^s coefficient is `P_s·q − P·q_{s-1}`.
    pub fn is_homogeneous_degree_one(&self) -> bool {
        let dp = self.p.entries().iter().filter_map(MultiPoly::total_degree).max();
        let dq = self.q.total_degree().unwrap_or(0);
        let top = dp.map_or(dq, |d| d.max(dq)) + 1;
        for s in 0..=top {
            let q_prev = if s == 0 { MultiPoly::zero(self.nvars()) } else { self.q.graded_part(s - 1) };
            for e in self.p.entries() {
                if &e.graded_part(s) * &self.q != e * &q_prev {
                    return false;
                }
            }
        }
        true
    }

    pub fn symmetry_profile(&self) -> SymmetryFlags {
        SymmetryFlags {
            real: self.is_real(),
            symmetric: self.is_symmetric(),
            hermitian: self.is_hermitian(),
            homogeneous: self.is_homogeneous_degree_one(),
        }
    }

    /// `(P·q̄, q·q̄)`: same function with a real-coefficient denominator.
    pub fn realify(&self) -> Result<Self, ArithError> {
        if !self.is_real() && !self.is_hermitian() {
            return Err(ArithError::SymmetryAbsent);
        }
        let qc = self.q.conj();
        Ok(Self { p: self.p.scale_poly(&qc), q: &self.q * &qc })
    }

    /// First variable index `j` such that setting `z_j = 1` keeps `q ≢ 0`.
    pub fn dehomogenize_index(&self) -> Result<usize, ArithError> {
        (0..self.nvars())
            .find(|&j| !self.q.substitute(j, &GR::one()).is_zero())
            .ok_or(ArithError::AllSubstitutionsSingular)
    }

    /// `z_j = 1` substituted, variable slot kept (unused afterwards).
    pub fn substitute_one(&self, j: usize) -> Result<Self, ArithError> {
        let q = self.q.substitute(j, &GR::one());
        if q.is_zero() {
            return Err(ArithError::AllSubstitutionsSingular);
        }
        Ok(Self { p: self.p.substitute(j, &GR::one()), q })
    }

    /// `g(w) = f(…, 1, …)` in `n − 1` variables, substituting at the first
    /// admissible index. Returns `(g, j)`.
    pub fn dehomogenize(&self) -> Result<(Self, usize), ArithError> {
        let j = self.dehomogenize_index()?;
        Ok((self.dehomogenize_at(j)?, j))
    }

    pub fn dehomogenize_at(&self, j: usize) -> Result<Self, ArithError> {
        let s = self.substitute_one(j)?;
        Ok(Self { p: s.p.map(|e| e.remove_var(j)), q: s.q.remove_var(j) })
    }
}
