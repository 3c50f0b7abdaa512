//! Exact randomized checks that a realization reproduces a rational matrix
//! function, and entrywise structure checks on pencils.
//!
//! Sampling uses integer points, so every comparison is exact. A wrong
//! realization whose difference from `f` clears to a nonzero polynomial of
//! total degree `d` survives one trial with probability at most
//! `d / (2·range + 1)`.

use pencilforge_arith::{RationalMatrixFunction, SymmetryFlags, GR};
use pencilforge_blockmat::Matrix;
use pencilforge_realize::{Pencil, Realization, RealizeError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_TRIALS: usize = 8;
pub const DEFAULT_RANGE: i64 = 1 << 16;
pub const DEFAULT_SEED: u64 = 1;

/// Resampling budget per requested trial.
const SKIP_FACTOR: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("trailing block is singular at this point")]
    SingularAtPoint,
    #[error("{skipped} singular samples for {trials} trials; A22 or q is probably identically singular")]
    TooManySingularSamples { skipped: usize, trials: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub point: Vec<GR>,
    pub expected: Matrix,
    pub got: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    /// Points that were evaluated, in sampling order.
    pub points: Vec<Vec<GR>>,
    pub all_passed: bool,
    pub first_failure: Option<Failure>,
    pub skipped_singular: usize,
    pub seed: u64,
    pub range: i64,
}

/// `A(point)/A₂₂(point)`.
pub fn eval_realization(r: &Realization, point: &[GR]) -> Result<Matrix, VerifyError> {
    r.eval(point).map_err(|e| match e {
        RealizeError::SingularAtPoint => VerifyError::SingularAtPoint,
        other => VerifyError::ShapeMismatch(other.to_string()),
    })
}

/// Compare `r` and `f` at `trials` integer points drawn from `[−range, range]ⁿ`.
/// Points where `A₂₂` is singular or `q` vanishes are skipped and counted.
pub fn check_realization(
    r: &Realization,
    f: &RationalMatrixFunction,
    trials: usize,
    seed: u64,
    range: i64,
) -> Result<VerifyReport, VerifyError> {
    if r.nvars() != f.nvars() {
        return Err(VerifyError::ShapeMismatch(format!("realization has {} variables, function has {}", r.nvars(), f.nvars())));
    }
    if r.k() != f.side() {
        return Err(VerifyError::ShapeMismatch(format!("realization is {0}x{0}, function is {1}x{1}", r.k(), f.side())));
    }
    let range = range.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport {
        trials,
        points: Vec::with_capacity(trials),
        all_passed: true,
        first_failure: None,
        skipped_singular: 0,
        seed,
        range,
    };
    while report.points.len() < trials {
        if report.skipped_singular > SKIP_FACTOR * trials.max(1) {
            return Err(VerifyError::TooManySingularSamples { skipped: report.skipped_singular, trials });
        }
        let point: Vec<GR> = (0..f.nvars()).map(|_| GR::from_int(rng.random_range(-range..=range))).collect();
        let Ok(expected) = f.eval(&point) else {
            report.skipped_singular += 1;
            continue;
        };
        let got = match eval_realization(r, &point) {
            Ok(m) => m,
            Err(VerifyError::SingularAtPoint) => {
                report.skipped_singular += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let expected = Matrix::from_vec(f.side(), f.side(), expected).expect("k×k values");
        if got != expected && report.first_failure.is_none() {
            report.all_passed = false;
            report.first_failure = Some(Failure { point: point.clone(), expected, got });
        }
        report.points.push(point);
    }
    Ok(report)
}

/// [`check_realization`] with the default trial count, seed and range.
pub fn check_realization_default(r: &Realization, f: &RationalMatrixFunction) -> Result<VerifyReport, VerifyError> {
    check_realization(r, f, DEFAULT_TRIALS, DEFAULT_SEED, DEFAULT_RANGE)
}

/// Entrywise structure of all coefficients; `homogeneous` means `A₀ = 0`.
pub fn check_pencil_structure(p: &Pencil) -> SymmetryFlags {
    p.structure()
}
