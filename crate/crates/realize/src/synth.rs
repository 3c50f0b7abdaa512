use pencilforge_arith::{MatrixPoly, MultiPoly, RationalMatrixFunction, SymmetryFlags, GR};
use pencilforge_blockmat::{FactorMode, Matrix};

use crate::certify::{certify, PointStream};
use crate::gadgets::{realize_simple_product, realize_square};
use crate::lift::{add, add_pencil, inv_of_schur, kron_realizations, scalar_product, scale};
use crate::{Pencil, Realization, RealizeError};

/// `z^α`. Variables are listed with multiplicity and paired left to right:
/// equal pairs use the square gadget, distinct pairs the product gadget. A
/// leftover variable is paired with a padding variable that is then set to 1.
pub fn realize_monomial(alpha: &[u32]) -> Result<Realization, RealizeError> {
    let n = alpha.len();
    let vars: Vec<usize> = alpha.iter().enumerate().flat_map(|(j, &e)| std::iter::repeat_n(j, e as usize)).collect();
    match vars.len() {
        0 => return Ok(Realization::degenerate(Pencil::constant(Matrix::identity(1), n), "monomial")),
        1 => {
            let mut p = Pencil::zero(1, n);
            p.set_coeff(vars[0] + 1, Matrix::identity(1));
            return Ok(Realization::degenerate(p, "monomial"));
        }
        _ => {}
    }
    let mut factors = Vec::new();
    for pair in vars.chunks(2) {
        factors.push(match *pair {
            [a, b] if a == b => realize_square(a, n)?,
            [a, b] => realize_simple_product(a, b, n)?,
            [a] => {
                let padded = realize_simple_product(a, n, n + 1)?;
                let mut r = Realization::new(padded.pencil.fold_variable(n), 1, "simple_product")?;
                r.provenance.push("pad".into());
                r
            }
            _ => unreachable!("chunks of two"),
        });
    }
    let mut acc = factors.remove(0);
    for f in &factors {
        acc = kron_realizations(&acc, f)?;
    }
    acc.provenance.push("monomial".into());
    Ok(acc)
}

/// `p(z) = Σ a_α z^α` as a `1×1` realization: scaled monomials summed, the
/// constant term added to the leading block.
pub fn realize_scalar_poly(p: &MultiPoly) -> Result<Realization, RealizeError> {
    let n = p.nvars();
    let mut acc: Option<Realization> = None;
    for (alpha, a) in p.terms() {
        if alpha.iter().all(|&e| e == 0) {
            continue;
        }
        let mut r = realize_monomial(alpha)?;
        if !a.is_one() {
            r = scale(&r, a)?;
        }
        acc = Some(match acc {
            None => r,
            Some(s) => add(&s, &r)?,
        });
    }
    let c = p.constant_term();
    let mut r = match acc {
        None => Realization::degenerate(Pencil::constant(Matrix::scalar(c), n), "constant"),
        Some(s) if c.is_zero() => s,
        Some(s) => add_pencil(&s, &Pencil::constant(Matrix::scalar(c), n))?,
    };
    r.provenance.push("scalar_poly".into());
    Ok(r)
}

fn unit(k: usize, i: usize, j: usize) -> Matrix {
    Matrix::unit(k, k, i, j)
}

fn real_part(p: &MultiPoly) -> MultiPoly {
    (p + &p.conj()).scale(&GR::ratio(1, 2))
}

fn imag_part(p: &MultiPoly) -> MultiPoly {
    // (p − p̄)/(2i) = −i(p − p̄)/2
    (p - &p.conj()).scale(&GR::complex(GR::zero(), GR::ratio(-1, 2)))
}

/// Checks that `p` has the structure `mode` asks for.
pub fn matrix_poly_has_mode(p: &MatrixPoly, mode: FactorMode) -> bool {
    match mode {
        FactorMode::Plain => true,
        FactorMode::Real => p.has_real_coeffs(),
        FactorMode::Symmetric => p.transpose() == *p,
        FactorMode::Hermitian => p.adjoint() == *p,
        FactorMode::RealSymmetric => p.has_real_coeffs() && p.transpose() == *p,
    }
}

/// `P(z)` as a sum of `P_ij(z)·B` terms, `B` chosen per `mode`: `E_ij`
/// (plain, real), `E_ii` and `E_ij + E_ji` (symmetric), and additionally
/// `i(E_ij − E_ji)` with real and imaginary parts split out (Hermitian).
pub fn realize_matrix_poly(p: &MatrixPoly, mode: FactorMode) -> Result<Realization, RealizeError> {
    if !matrix_poly_has_mode(p, mode) {
        return Err(RealizeError::ModeUnsatisfiable(format!("polynomial matrix is not {mode:?}")));
    }
    let (k, n) = (p.side(), p.nvars());
    if k == 1 {
        return realize_scalar_poly(p.get(0, 0));
    }
    let mut terms: Vec<(MultiPoly, Matrix)> = Vec::new();
    match mode {
        FactorMode::Plain | FactorMode::Real => {
            for i in 0..k {
                for j in 0..k {
                    terms.push((p.get(i, j).clone(), unit(k, i, j)));
                }
            }
        }
        FactorMode::Symmetric | FactorMode::RealSymmetric => {
            for i in 0..k {
                terms.push((p.get(i, i).clone(), unit(k, i, i)));
                for j in i + 1..k {
                    terms.push((p.get(i, j).clone(), &unit(k, i, j) + &unit(k, j, i)));
                }
            }
        }
        FactorMode::Hermitian => {
            let im = GR::i();
            for i in 0..k {
                terms.push((real_part(p.get(i, i)), unit(k, i, i)));
                for j in i + 1..k {
                    terms.push((real_part(p.get(i, j)), &unit(k, i, j) + &unit(k, j, i)));
                    terms.push((imag_part(p.get(i, j)), (&unit(k, i, j) - &unit(k, j, i)).scale(&im)));
                }
            }
        }
    }
    let mut acc: Option<Realization> = None;
    for (poly, b) in terms.iter().filter(|(poly, _)| !poly.is_zero()) {
        let term = scalar_product(&realize_scalar_poly(poly)?, b, None)?;
        acc = Some(match acc {
            None => term,
            Some(s) => add(&s, &term)?,
        });
    }
    let mut r = acc.unwrap_or_else(|| Realization::degenerate(Pencil::zero(k, n), "zero"));
    r.provenance.push(format!("matrix_poly[{mode:?}]"));
    Ok(r)
}

/// Integer coordinates in the order 0, 1, −1, 2, −2, …
fn coordinate(idx: usize) -> i64 {
    let h = idx.div_ceil(2) as i64;
    if idx % 2 == 1 {
        h
    } else {
        -h
    }
}

/// Integer points of max-norm `r`, lexicographic in the coordinate order.
fn shell(nvars: usize, r: usize) -> Vec<Vec<i64>> {
    let width = 2 * r + 1;
    let mut out = Vec::new();
    let mut idx = vec![0usize; nvars];
    loop {
        let pt: Vec<i64> = idx.iter().map(|&i| coordinate(i)).collect();
        if pt.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0) == r {
            out.push(pt);
        }
        let mut d = nvars;
        loop {
            if d == 0 {
                return out;
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < width {
                break;
            }
            idx[d] = 0;
        }
    }
}

fn eval_matrix(p: &MatrixPoly, point: &[GR]) -> Matrix {
    let k = p.side();
    Matrix::from_vec(k, k, p.eval(point).expect("point arity matches")).expect("k×k values")
}

/// `(z₀, λ₀)` with `P(z₀) ≠ 0` and `det(P(z₀) − λ₀I) ≠ 0`: `z₀` is the first
/// integer point by increasing max-norm, `λ₀` the first of `1, 2, …, k + 1`.
pub fn choose_shift(p: &MatrixPoly) -> Result<(Vec<GR>, GR), RealizeError> {
    if p.is_zero() {
        return Err(RealizeError::ZeroPolynomialMatrix);
    }
    let k = p.side();
    for r in 0.. {
        for pt in shell(p.nvars(), r) {
            let z0: Vec<GR> = pt.into_iter().map(GR::from_int).collect();
            let v = eval_matrix(p, &z0);
            if v.is_zero() {
                continue;
            }
            for lam in 1..=(k as i64 + 1) {
                let shifted = &v - &Matrix::identity(k).scale(&GR::from_int(lam));
                if shifted.is_invertible() {
                    return Ok((z0, GR::from_int(lam)));
                }
            }
        }
    }
    unreachable!("a nonzero polynomial matrix is nonzero at some integer point")
}

/// True when `det P(z) ≢ 0`: sampled first, decided exactly if every sample
/// was singular.
fn generically_nonsingular(p: &MatrixPoly) -> bool {
    let mut points = PointStream::new(p.nvars());
    for _ in 0..8 {
        if eval_matrix(p, &points.next_point()).is_invertible() {
            return true;
        }
    }
    !p.det().is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealizeOptions {
    /// Realize every symmetry the function has, plus `force`.
    pub auto: bool,
    /// Symmetries that must be realized; an error if the function lacks one.
    pub force: SymmetryFlags,
    /// Certify `det A₂₂ ≢ 0` symbolically rather than by a sample point.
    pub exact_certificate: bool,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self { auto: true, force: SymmetryFlags::NONE, exact_certificate: false }
    }
}

fn factor_mode(t: &SymmetryFlags) -> FactorMode {
    let count = [t.real, t.symmetric, t.hermitian].iter().filter(|&&b| b).count();
    if count >= 2 {
        FactorMode::RealSymmetric
    } else if t.symmetric {
        FactorMode::Symmetric
    } else if t.hermitian {
        FactorMode::Hermitian
    } else if t.real {
        FactorMode::Real
    } else {
        FactorMode::Plain
    }
}

fn union(a: SymmetryFlags, b: SymmetryFlags) -> SymmetryFlags {
    SymmetryFlags {
        real: a.real || b.real,
        symmetric: a.symmetric || b.symmetric,
        hermitian: a.hermitian || b.hermitian,
        homogeneous: a.homogeneous || b.homogeneous,
    }
}

/// Linear-pencil realization `f(z) = A(z)/A₂₂(z)` realizing the requested
/// symmetries: realness, symmetry, Hermitian structure and homogeneity.
pub fn realize(f: &RationalMatrixFunction, opts: &RealizeOptions) -> Result<Realization, RealizeError> {
    let profile = f.symmetry_profile();
    if !profile.contains(&opts.force) {
        let missing: Vec<&str> = opts.force.names().into_iter().filter(|n| !profile.names().contains(n)).collect();
        return Err(RealizeError::ModeUnsatisfiable(format!("function is not {}", missing.join(", "))));
    }
    let target = if opts.auto { union(profile, opts.force) } else { opts.force };

    let r = if f.numerator().is_zero() {
        Realization::degenerate(Pencil::zero(f.side(), f.nvars()), "zero")
    } else if target.homogeneous {
        let j = f.dehomogenize_index()?;
        let g = f.substitute_one(j)?;
        let inner = realize_inhomogeneous(&g, &target)?;
        let mut pencil = inner.pencil.clone();
        if !pencil.coeff(j + 1).is_zero() {
            return Err(RealizeError::ShapeMismatch("dehomogenized realization depends on the fixed variable".into()));
        }
        let a0 = pencil.coeff(0).clone();
        let side = pencil.side();
        pencil.set_coeff(j + 1, a0);
        pencil.set_coeff(0, Matrix::zeros(side, side));
        let mut out = Realization::new(pencil, inner.split, "rehomogenize")?;
        out.provenance = [inner.provenance, vec![format!("rehomogenize[z{}]", j + 1)]].concat();
        out
    } else {
        realize_inhomogeneous(f, &target)?
    };

    let mut r = certify(r, opts.exact_certificate)?;
    r.flags = r.pencil.structure();
    if !r.flags.contains(&target) {
        return Err(RealizeError::ModeUnsatisfiable(format!("construction did not produce {:?}", target.names())));
    }
    r.provenance.push("realize".into());
    Ok(r)
}

fn realize_inhomogeneous(f: &RationalMatrixFunction, target: &SymmetryFlags) -> Result<Realization, RealizeError> {
    let f = if (target.real || target.hermitian) && !f.denominator().has_real_coeffs() { f.realify()? } else { f.clone() };
    let mode = factor_mode(target);
    let (p, q) = (f.numerator(), f.denominator());

    if q.is_constant() {
        let c = q.constant_term().inv().map_err(|_| RealizeError::IdenticallyZeroDenominator)?;
        return realize_matrix_poly(&p.map(|e| e.scale(&c)), mode);
    }

    let rinv = inv_of_schur(&realize_scalar_poly(q)?)?;
    if generically_nonsingular(p) {
        return kron_realizations(&rinv, &realize_matrix_poly(p, mode)?);
    }

    let (z0, lam) = choose_shift(p)?;
    let k = p.side();
    let pz0 = eval_matrix(p, &z0);
    let shift = &Matrix::identity(k).scale(&lam) - &pz0;
    let shift_poly = MatrixPoly::from_fn(k, p.nvars(), |i, j| MultiPoly::constant(p.nvars(), shift.get(i, j).clone()));
    let p1 = p.checked_add(&shift_poly)?;
    let p2 = -&shift;
    let r1 = kron_realizations(&rinv, &realize_matrix_poly(&p1, mode)?)?;
    let r2 = scalar_product(&rinv, &p2, None)?;
    let mut r = add(&r1, &r2)?;
    r.provenance.push("shift".into());
    Ok(r)
}
