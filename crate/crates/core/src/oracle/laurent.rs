//! Dense Laurent polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `Σ coeffs[k]·q^{min_exp+k}`. Stored trimmed: both end coefficients are
/// nonzero, and the zero polynomial has no coefficients and `min_exp = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    pub fn from_coeffs(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn from_i64(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 − q^a`.
    pub fn one_minus_q_pow(a: i64) -> Self {
        let mut p = Self::one();
        p.mul_one_minus_q_pow(a);
        p
    }

    fn trim(&mut self) {
        let end = self
            .coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .map_or(0, |i| i + 1);
        self.coeffs.truncate(end);
        let start = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if start > 0 {
            self.coeffs.drain(..start);
            self.min_exp += start as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    pub fn max_exp(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_exp + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let k = e - self.min_exp;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// In `ℤ[q]`.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.min_exp >= 0
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// `self ← self·(1 − q^a)`, in `O(len)`.
    pub fn mul_one_minus_q_pow(&mut self, a: i64) {
        if a == 0 {
            *self = Self::zero();
            return;
        }
        if self.is_zero() {
            return;
        }
        if a < 0 {
            // p(1 − q^a) = −q^a·p(1 − q^{−a})
            self.mul_one_minus_q_pow(-a);
            self.min_exp += a;
            for c in &mut self.coeffs {
                *c = -&*c;
            }
            return;
        }
        let a = a as usize;
        let len = self.coeffs.len();
        self.coeffs.resize(len + a, BigInt::zero());
        for k in (a..len + a).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] -= &lo[k - a];
        }
        self.trim();
    }

    /// `self ← self/(1 − q^a)` when the quotient is a Laurent polynomial;
    /// returns `false` and leaves `self` unspecified otherwise.
    pub fn div_one_minus_q_pow(&mut self, a: i64) -> bool {
        if a == 0 {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        if a < 0 {
            // p/(1 − q^a) = −q^{−a}·p/(1 − q^{−a})
            if !self.div_one_minus_q_pow(-a) {
                return false;
            }
            self.min_exp -= a;
            for c in &mut self.coeffs {
                *c = -&*c;
            }
            return true;
        }
        let a = a as usize;
        let len = self.coeffs.len();
        if len <= a {
            return false;
        }
        for k in a..len {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] += &lo[k - a];
        }
        if self.coeffs[len - a..].iter().any(|c| !c.is_zero()) {
            return false;
        }
        self.coeffs.truncate(len - a);
        self.trim();
        true
    }

    /// Exact quotient by `d` (whose leading coefficient must divide every
    /// step), or `None` when there is a nonzero remainder.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let m = d.coeffs.len();
        if n < m {
            return None;
        }
        let lead = d.coeffs.last().unwrap();
        let monic = lead.is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = &rem[k + m - 1];
            if top.is_zero() {
                continue;
            }
            let c = if monic {
                top.clone()
            } else {
                let (q, r) = top.div_rem(lead);
                if !r.is_zero() {
                    return None;
                }
                q
            };
            for (j, dj) in d.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.min_exp - d.min_exp, quot))
    }
}

impl<'b> Mul<&'b LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'b LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_coeffs(self.min_exp + rhs.min_exp, out)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + k as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}
