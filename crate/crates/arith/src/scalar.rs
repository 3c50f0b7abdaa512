use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ArithError;

/// Exact complex number `re + im*i` with rational parts.
///
/// `BigRational` keeps both parts reduced with a positive denominator, so
/// structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

pub type GR = GaussianRational;

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::new(BigRational::from_integer(n), BigRational::zero())
    }

    /// `num/den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(num.into(), den.into()), BigRational::zero())
    }

    pub fn complex(re: GaussianRational, im: GaussianRational) -> Self {
        // re + i*im for real inputs; general inputs are combined exactly
        re + GaussianRational::i() * im
    }

    pub fn from_parts(re_num: BigInt, re_den: BigInt, im_num: BigInt, im_den: BigInt) -> Result<Self, ArithError> {
        if re_den.is_zero() || im_den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::new(BigRational::new(re_num, re_den), BigRational::new(im_num, im_den)))
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2, always real and nonnegative.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Real and imaginary parts reduced modulo the prime `p`, or `None` when
    /// a denominator is divisible by `p`.
    pub fn residue(&self, p: u64) -> Option<(u64, u64)> {
        let m = BigInt::from(p);
        let part = |q: &BigRational| -> Option<u64> {
            let d = q.denom().mod_floor(&m);
            if d.is_zero() {
                return None;
            }
            let d_inv = d.modpow(&(&m - 2u32), &m);
            let n = q.numer().mod_floor(&m);
            u64::try_from((n * d_inv) % &m).ok()
        };
        Some((part(&self.re)?, part(&self.im)?))
    }

    /// Numerator/denominator pairs rendered as decimal strings.
    pub fn to_parts(&self) -> (String, String, String, String) {
        (
            self.re.numer().to_string(),
            self.re.denom().to_string(),
            self.im.numer().to_string(),
            self.im.denom().to_string(),
        )
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let imag = if self.im.abs().is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rat(&self.im.abs()))
        };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{imag}")
            } else {
                write!(f, "{imag}")
            }
        } else {
            write!(f, "{}{}{}", fmt_rat(&self.re), sign, imag)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses an integer or `a/b` rational (real only).
impl FromStr for GaussianRational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ArithError::InvalidLiteral(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::new(BigRational::new(n, d), BigRational::zero()))
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }
}

impl<'a> Add<&'a GR> for &'a GR {
    type Output = GR;
    fn add(self, rhs: &GR) -> GR {
        GR::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GR> for &'a GR {
    type Output = GR;
    fn sub(self, rhs: &GR) -> GR {
        GR::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GR> for &'a GR {
    type Output = GR;
    fn mul(self, rhs: &GR) -> GR {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GR::new(&self.re * &rhs.re, BigRational::zero());
        }
        GR::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GR {
    type Output = GR;
    fn neg(self) -> GR {
        GR::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GR {
    type Output = GR;
    fn neg(self) -> GR {
        GR::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GR> for GR {
            type Output = GR;
            fn $m(self, rhs: GR) -> GR {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&GR> for GR {
            type Output = GR;
            fn $m(self, rhs: &GR) -> GR {
                (&self).$m(rhs)
            }
        }
        impl $tr<GR> for &GR {
            type Output = GR;
            fn $m(self, rhs: GR) -> GR {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&GR> for GR {
    fn add_assign(&mut self, rhs: &GR) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GR> for GR {
    fn sub_assign(&mut self, rhs: &GR) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GR> for GR {
    fn mul_assign(&mut self, rhs: &GR) {
        *self = &*self * rhs;
    }
}

impl Sum for GR {
    fn sum<I: Iterator<Item = GR>>(iter: I) -> GR {
        iter.fold(GR::zero(), |a, b| a + b)
    }
}

impl Product for GR {
    fn product<I: Iterator<Item = GR>>(iter: I) -> GR {
        iter.fold(GR::one(), |a, b| a * b)
    }
}
