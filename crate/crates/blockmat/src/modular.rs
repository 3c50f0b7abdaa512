//! Fast nonsingularity test by elimination over `F_{p²}`, `p = 2⁶¹ − 1`.
//! Since `p ≡ 3 (mod 4)`, `x² + 1` is irreducible and `i` maps into the
//! field. A nonzero determinant mod `p` implies a nonzero determinant over
//! the Gaussian rationals; the converse can fail, so callers fall back to
//! exact elimination.

use crate::Matrix;

const P: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq)]
struct Fp2(u64, u64);

fn mulp(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addp(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn subp(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

fn powp(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulp(acc, b);
        }
        b = mulp(b, b);
        e >>= 1;
    }
    acc
}

impl Fp2 {
    fn is_zero(self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    fn mul(self, o: Fp2) -> Fp2 {
        Fp2(subp(mulp(self.0, o.0), mulp(self.1, o.1)), addp(mulp(self.0, o.1), mulp(self.1, o.0)))
    }

    fn sub(self, o: Fp2) -> Fp2 {
        Fp2(subp(self.0, o.0), subp(self.1, o.1))
    }

    fn inv(self) -> Fp2 {
        let n = addp(mulp(self.0, self.0), mulp(self.1, self.1));
        let ni = powp(n, P - 2);
        Fp2(mulp(self.0, ni), mulp(P - self.1 % P, ni) % P)
    }
}

/// `Some(true)` when the matrix is certainly nonsingular, `None` when the
/// modular image is singular or undefined.
pub(crate) fn certainly_invertible(m: &Matrix) -> Option<bool> {
    let n = m.rows();
    let mut a: Vec<Fp2> = Vec::with_capacity(n * n);
    for v in m.data() {
        let (re, im) = v.residue(P)?;
        a.push(Fp2(re, im));
    }
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r * n + c].is_zero())?;
        if piv != c {
            for j in 0..n {
                a.swap(piv * n + j, c * n + j);
            }
        }
        let inv = a[c * n + c].inv();
        for r in c + 1..n {
            let f = a[r * n + c].mul(inv);
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                a[r * n + j] = a[r * n + j].sub(f.mul(a[c * n + j]));
            }
        }
    }
    Some(true)
}
