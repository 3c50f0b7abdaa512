use pencilforge_arith::GR;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Realization, RealizeError};

const CERTIFICATE_SEED: u64 = 0x5eed_ce27;
const CERTIFICATE_RANGE: i64 = 1 << 10;
const CERTIFICATE_ATTEMPTS: usize = 64;

/// Deterministic stream of integer sample points in `[−range, range]ⁿ`.
pub(crate) struct PointStream {
    rng: ChaCha8Rng,
    nvars: usize,
    range: i64,
}

impl PointStream {
    pub(crate) fn new(nvars: usize) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(CERTIFICATE_SEED), nvars, range: CERTIFICATE_RANGE }
    }

    pub(crate) fn next_point(&mut self) -> Vec<GR> {
        (0..self.nvars).map(|_| GR::from_int(self.rng.random_range(-self.range..=self.range))).collect()
    }
}

/// First sampled point where `A₂₂` is invertible, and, with `schur_invertible`,
/// the Schur complement too.
pub(crate) fn sample_nonsingular(r: &Realization, schur_invertible: bool) -> Option<Vec<GR>> {
    if r.is_degenerate() && !schur_invertible {
        return Some(vec![GR::zero(); r.nvars()]);
    }
    let mut points = PointStream::new(r.nvars());
    (0..CERTIFICATE_ATTEMPTS).map(|_| points.next_point()).find(|p| {
        // det A = det A₂₂ · det(A/A₂₂)
        let Ok(a) = r.at(p) else { return false };
        a.a22().is_invertible() && (!schur_invertible || a.matrix().is_invertible())
    })
}

/// Record a point where `A₂₂` is invertible. With `exact`, also require the
/// symbolic determinant of `A₂₂(z)` to be nonzero.
pub fn certify(mut r: Realization, exact: bool) -> Result<Realization, RealizeError> {
    if exact && !r.is_degenerate() && r.a22_poly().det().is_zero() {
        return Err(RealizeError::IdenticallySingular);
    }
    match sample_nonsingular(&r, false) {
        Some(p) => {
            r.certificate = Some(p);
            Ok(r)
        }
        None if exact => Ok(r),
        None => Err(RealizeError::IdenticallySingular),
    }
}

/// Errors unless `A₂₂` and the Schur complement are invertible somewhere.
pub(crate) fn require_generic(r: &Realization) -> Result<(), RealizeError> {
    if sample_nonsingular(r, true).is_some() {
        return Ok(());
    }
    if sample_nonsingular(r, false).is_some() {
        Err(RealizeError::IdenticallySingularSchur)
    } else {
        Err(RealizeError::IdenticallySingular)
    }
}
