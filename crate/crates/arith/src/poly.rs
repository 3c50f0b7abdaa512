use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::GR;
use crate::ArithError;

pub type Exponent = Vec<u32>;

/// Sparse polynomial in `nvars` commuting variables over the Gaussian rationals.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, GR>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GR::one())
    }

    pub fn constant(nvars: usize, c: GR) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `z_{j+1}` (zero-based index `j`).
    pub fn var(nvars: usize, j: usize) -> Self {
        assert!(j < nvars, "variable index {j} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::monomial(nvars, e, GR::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: GR) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must equal nvars");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, GR)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: &GR) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GR)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant polynomials, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> GR {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(GR::zero)
    }

    pub fn coeff(&self, e: &[u32]) -> GR {
        self.terms.get(e).cloned().unwrap_or_else(GR::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.terms.values().all(GR::is_real)
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.nvars != other.nvars {
            return Err(ArithError::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GR) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient-wise conjugate, written p̄ (so p̄(z) = conj(p(conj z))).
    pub fn conj(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.conj())).collect(),
        }
    }

    pub fn eval(&self, point: &[GR]) -> Result<GR, ArithError> {
        if point.len() != self.nvars {
            return Err(ArithError::VarCountMismatch { left: self.nvars, right: point.len() });
        }
        let mut acc = GR::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Replace variable `j` by the constant `value`, keeping the variable slot.
    pub fn substitute(&self, j: usize, value: &GR) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[j];
            e2[j] = 0;
            out.add_term(e2, &(c * &value.pow(k)));
        }
        out
    }

    /// Drop variable slot `j`; panics if `j` still occurs.
    pub fn remove_var(&self, j: usize) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            assert_eq!(e[j], 0, "variable still present");
            let mut e2 = e.clone();
            e2.remove(j);
            out.add_term(e2, c);
        }
        out
    }

    /// Insert a fresh unused variable slot at position `j`.
    pub fn insert_var(&self, j: usize) -> Self {
        let mut out = Self::zero(self.nvars + 1);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2.insert(j, 0);
            out.add_term(e2, c);
        }
        out
    }

    /// Re-embed into `nvars` variables, sending variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            out.add_term(e2, c);
        }
        out
    }

    /// Homogeneous component of total degree `d`.
    pub fn graded_part(&self, d: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &GR)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (de, dc) = divisor.leading_term()?;
        let dc_inv = dc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((re, rc)) = rem.leading_term() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exponent = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let c = rc * &dc_inv;
            let t = Self::monomial(self.nvars, e, c);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            let cs = c.to_string();
            let coeff = if c.is_real() { cs } else { format!("({cs})") };
            let term = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono.join("*")
            } else if c == &-GR::one() {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", coeff, mono.join("*"))
            };
            if idx > 0 && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("z{i}")).collect()
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&default_names(self.nvars)))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

// Operator forms panic on variable-count mismatch; use the checked_* methods
// when inputs are untrusted.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial variable counts differ")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}
