//! The constant-matrix witness constructions applied coefficient by
//! coefficient. Every assembly is affine in its arguments, so applying it to
//! `A₀` with identity blocks and to `A₁…Aₙ` without them yields a pencil.

use pencilforge_arith::GR;
use pencilforge_blockmat::{rank_factorize, FactorMode, Matrix, PartitionedMatrix};
use pencilforge_schuralg::assemble;

use crate::certify::require_generic;
use crate::gadgets::{realize_simple_product, realize_square};
use crate::{Pencil, Realization, RealizeError};

fn part(m: &Matrix, split: usize) -> PartitionedMatrix {
    PartitionedMatrix::new(m.clone(), split).expect("split within side")
}

fn join(a: &Realization, b: &Realization, note: &str) -> Vec<String> {
    let mut v = a.provenance.clone();
    v.extend(b.provenance.iter().cloned());
    v.push(note.to_string());
    v
}

fn finish(pencil: Pencil, split: usize, provenance: Vec<String>) -> Realization {
    let flags = pencil.structure();
    Realization::from_parts(pencil, split, flags, provenance)
}

fn same_vars(a: &Realization, b: &Realization) -> Result<(), RealizeError> {
    if a.nvars() != b.nvars() {
        return Err(RealizeError::ShapeMismatch(format!("{} vs {} variables", a.nvars(), b.nvars())));
    }
    Ok(())
}

fn same_k(a: &Realization, b: &Realization) -> Result<(), RealizeError> {
    same_vars(a, b)?;
    if a.k() != b.k() {
        return Err(RealizeError::ShapeMismatch(format!("{0}x{0} vs {1}x{1} functions", a.k(), b.k())));
    }
    Ok(())
}

/// `λ·f`.
pub fn scale(r: &Realization, lambda: &GR) -> Result<Realization, RealizeError> {
    if lambda.is_zero() {
        return Err(RealizeError::ShapeMismatch("scale factor must be nonzero".into()));
    }
    let pencil = r.pencil.map(|m| m.scale(lambda));
    Ok(finish(pencil, r.split, [r.provenance.clone(), vec!["scale".into()]].concat()))
}

/// `f + L(z)` for a linear pencil `L` of the same size as `f`.
pub fn add_pencil(r: &Realization, l: &Pencil) -> Result<Realization, RealizeError> {
    if l.side() != r.k() || l.nvars() != r.nvars() {
        return Err(RealizeError::ShapeMismatch("added pencil must match the realized function".into()));
    }
    let split = r.split;
    let pencil = r.pencil.zip_with(l, |a, b, _| assemble::add_leading(&part(a, split), b));
    Ok(finish(pencil, split, [r.provenance.clone(), vec!["add_const".into()]].concat()))
}

/// `f + g`.
pub fn add(a: &Realization, b: &Realization) -> Result<Realization, RealizeError> {
    same_k(a, b)?;
    let (sa, sb) = (a.split, b.split);
    let pencil = a.pencil.zip_with(&b.pencil, |x, y, _| assemble::add(&part(x, sa), &part(y, sb)));
    Ok(finish(pencil, sa, join(a, b, "add")))
}

/// `f ⊕ g`.
pub fn dsum(a: &Realization, b: &Realization) -> Result<Realization, RealizeError> {
    same_vars(a, b)?;
    let (sa, sb) = (a.split, b.split);
    let pencil = a.pencil.zip_with(&b.pencil, |x, y, _| assemble::dsum(&part(x, sa), &part(y, sb)));
    Ok(finish(pencil, sa + sb, join(a, b, "dsum")))
}

/// `f·g` (matrix product).
pub fn matmul(a: &Realization, b: &Realization) -> Result<Realization, RealizeError> {
    same_k(a, b)?;
    let (sa, sb) = (a.split, b.split);
    let pencil = a.pencil.zip_with(&b.pencil, |x, y, _| assemble::matmul(&part(x, sa), &part(y, sb)));
    Ok(finish(pencil, sa, join(a, b, "matmul")))
}

/// `B·f·C` for constant `B` (`l×k`) and `C` (`k×l`).
pub fn sandwich(b: &Matrix, r: &Realization, c: &Matrix) -> Result<Realization, RealizeError> {
    let k = r.k();
    if b.cols() != k || c.rows() != k || b.rows() != c.cols() {
        return Err(RealizeError::ShapeMismatch("sandwich factors do not fit the realized function".into()));
    }
    let split = r.split;
    let pencil = r.pencil.map(|m| assemble::sandwich(b, &part(m, split), c));
    Ok(finish(pencil, b.rows(), [r.provenance.clone(), vec!["sandwich".into()]].concat()))
}

/// `f⁻¹`.
pub fn inv_of_schur(r: &Realization) -> Result<Realization, RealizeError> {
    require_generic(r)?;
    let split = r.split;
    let pencil = r.pencil.map_slots(|m, unit| assemble::inv_of_schur(&part(m, split), unit));
    Ok(finish(pencil, split, [r.provenance.clone(), vec!["inv_of_schur".into()]].concat()))
}

/// `f·B` for a `1×1` function `f` and constant square `B`, through a rank
/// factorization of `B` in `mode` (`None` picks the strongest structure).
pub fn scalar_product(r: &Realization, b: &Matrix, mode: Option<FactorMode>) -> Result<Realization, RealizeError> {
    if r.k() != 1 {
        return Err(RealizeError::ShapeMismatch(format!("scalar product needs a 1x1 function, got {0}x{0}", r.k())));
    }
    let mode = mode.unwrap_or_else(|| FactorMode::detect(b));
    let fct = rank_factorize(b, mode).map_err(|e| RealizeError::ModeUnsatisfiable(e.to_string()))?;
    let pencil = r.pencil.map(|m| assemble::scalar_product(&part(m, 1), &fct));
    Ok(finish(pencil, b.rows(), [r.provenance.clone(), vec![format!("scalar_product[{mode:?}]")]].concat()))
}

/// Same pencil, new split. Resplitting inside the leading block realizes
/// the Schur complement of `f` with respect to its trailing part.
pub fn resplit(r: &Realization, split: usize) -> Result<Realization, RealizeError> {
    let mut out = Realization::new(r.pencil.clone(), split, "resplit")?;
    out.provenance = [r.provenance.clone(), vec![format!("compose[{split}]")]].concat();
    Ok(out)
}

/// Degenerate realization of `X(z) ⊗ Y(z)` for two pencils over the same
/// variables: the linear part goes into the leading block and each
/// quadratic term `z_i z_j M` is realized by a product or square gadget
/// scaled by `M`.
pub fn pencil_product(x: &Pencil, y: &Pencil) -> Result<Realization, RealizeError> {
    if x.nvars() != y.nvars() {
        return Err(RealizeError::ShapeMismatch("pencils over different variable sets".into()));
    }
    let n = x.nvars();
    let (xc, yc) = (x.coeffs(), y.coeffs());
    let mut linear = Vec::with_capacity(n + 1);
    linear.push(xc[0].kron(&yc[0]));
    for j in 1..=n {
        linear.push(&xc[0].kron(&yc[j]) + &xc[j].kron(&yc[0]));
    }
    let linear = Pencil::new(linear)?;

    let mut acc: Option<Realization> = None;
    for i in 1..=n {
        for j in i..=n {
            let m = if i == j { xc[i].kron(&yc[i]) } else { &xc[i].kron(&yc[j]) + &xc[j].kron(&yc[i]) };
            if m.is_zero() {
                continue;
            }
            let gadget = if i == j { realize_square(i - 1, n)? } else { realize_simple_product(i - 1, j - 1, n)? };
            let term = scalar_product(&gadget, &m, None)?;
            acc = Some(match acc {
                None => term,
                Some(a) => add(&a, &term)?,
            });
        }
    }
    Ok(match acc {
        None => Realization::degenerate(linear, "pencil_product"),
        Some(a) => {
            let mut r = add_pencil(&a, &linear)?;
            r.provenance.push("pencil_product".into());
            r
        }
    })
}

/// `f ⊗ g` for realizations over the same variables. `B(z)⊗A(z)` is
/// realized first, conjugated by `Q = diag(P(l,m), I)` so that its leading
/// `kl` block carries `f ⊗ g`, then re-split at `k·l`.
pub fn kron_realizations(a: &Realization, b: &Realization) -> Result<Realization, RealizeError> {
    same_vars(a, b)?;
    require_generic(a)?;
    require_generic(b)?;
    let (m, k) = (a.side(), a.k());
    let (n, l) = (b.side(), b.k());
    let c = pencil_product(&b.pencil, &a.pencil)?;
    let q = assemble::kron_left_permutation(m, n, l);
    let d = sandwich(&q.transpose(), &c, &q)?;
    let mut out = resplit(&d, k * l)?;
    out.provenance = join(a, b, "kron");
    Ok(out)
}

/// The second factor of [`pencil_kron_const`].
#[derive(Clone, Debug)]
pub enum KronFactor {
    Matrix(Matrix),
    Pencil(Pencil),
}

/// `f(z) ⊗ B(z)` for a constant matrix or a pencil `B` with `det B ≢ 0`.
pub fn pencil_kron_const(r: &Realization, b: &KronFactor) -> Result<Realization, RealizeError> {
    let pencil = match b {
        KronFactor::Matrix(m) => {
            if !m.is_square() {
                return Err(RealizeError::ShapeMismatch("Kronecker factor must be square".into()));
            }
            Pencil::constant(m.clone(), r.nvars())
        }
        KronFactor::Pencil(p) => p.clone(),
    };
    let rb = Realization::degenerate(pencil, "pencil");
    kron_realizations(r, &rb)
}
