//! Cyclotomic polynomials and the decomposition `±q^m·∏ φ_b^{v_b}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use crate::arith::divisors;
use crate::error::{Error, Result};
use crate::qvaluation::{HypergeomSpec, PochParams};

fn cache() -> &'static Mutex<HashMap<u64, LaurentPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, LaurentPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `φ_b`, obtained by dividing `q^b − 1` by `φ_d` for every proper divisor `d`.
pub fn cyclotomic_poly(b: u64) -> LaurentPoly {
    assert!(b >= 1, "b must be positive");
    if let Some(p) = cache().lock().unwrap().get(&b) {
        return p.clone();
    }
    let mut p = LaurentPoly::one_minus_q_pow(b as i64).neg();
    for d in divisors(b) {
        if d < b {
            p = p
                .div_exact(&cyclotomic_poly(d))
                .expect("φ_d divides q^b − 1 for d | b");
        }
    }
    cache().lock().unwrap().insert(b, p.clone());
    p
}

/// `sign·q^{q_exp}·∏ φ_b^{factors[b]}`, with no zero exponents stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloFactorization {
    pub sign: i8,
    pub q_exp: i64,
    pub factors: BTreeMap<u64, i64>,
}

impl Default for CycloFactorization {
    fn default() -> Self {
        Self::one()
    }
}

impl CycloFactorization {
    pub fn one() -> Self {
        CycloFactorization {
            sign: 1,
            q_exp: 0,
            factors: BTreeMap::new(),
        }
    }

    pub fn exponent(&self, b: u64) -> i64 {
        self.factors.get(&b).copied().unwrap_or(0)
    }

    fn add_factor(&mut self, b: u64, v: i64) {
        let e = self.factors.entry(b).or_insert(0);
        *e += v;
        if *e == 0 {
            self.factors.remove(&b);
        }
    }

    /// `self ← self·other^k` for `k = ±1`.
    pub fn mul_pow(&mut self, other: &CycloFactorization, k: i64) {
        debug_assert!(k == 1 || k == -1);
        if other.sign < 0 {
            self.sign = -self.sign;
        }
        self.q_exp += k * other.q_exp;
        for (&b, &v) in &other.factors {
            self.add_factor(b, k * v);
        }
    }

    pub fn inverse(&self) -> CycloFactorization {
        let mut out = CycloFactorization::one();
        out.mul_pow(self, -1);
        out
    }

    /// Every `φ_b` exponent is non-negative.
    pub fn is_laurent(&self) -> bool {
        self.factors.values().all(|&v| v >= 0)
    }

    /// In `ℤ[q]`.
    pub fn is_polynomial(&self) -> bool {
        self.is_laurent() && self.q_exp >= 0
    }

    /// Multiplies the factors back out.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        if !self.is_laurent() {
            return Err(Error::NotPolynomial);
        }
        let mut p = LaurentPoly::monomial(BigInt::from(self.sign), self.q_exp);
        for (&b, &v) in &self.factors {
            let phi = cyclotomic_poly(b);
            for _ in 0..v {
                p = &p * &phi;
            }
        }
        Ok(p)
    }
}

/// `1 − q^a = −∏_{b|a} φ_b` for `a > 0`, and `q^a·∏_{b|−a} φ_b` for `a < 0`.
pub fn factor_one_minus_q_pow(a: i64) -> Option<CycloFactorization> {
    if a == 0 {
        return None;
    }
    let mut f = CycloFactorization::one();
    if a > 0 {
        f.sign = -1;
    } else {
        f.q_exp = a;
    }
    for b in divisors(a.unsigned_abs()) {
        f.add_factor(b, 1);
    }
    Some(f)
}

/// Decomposes `poly` by repeated exact division by `φ_b` for `b` in
/// `candidates`; `NotDecomposable` if a non-unit cofactor remains.
pub fn factor_cyclotomic(
    poly: &LaurentPoly,
    candidates: impl IntoIterator<Item = u64>,
) -> Result<CycloFactorization> {
    if poly.is_zero() {
        return Err(Error::NotDecomposable);
    }
    let mut out = CycloFactorization::one();
    out.q_exp = poly.min_exp();
    let mut rest = poly.shift(-poly.min_exp());
    let cands: BTreeSet<u64> = candidates.into_iter().filter(|&b| b >= 1).collect();
    for b in cands.into_iter().rev() {
        let phi = cyclotomic_poly(b);
        while rest.max_exp().unwrap_or(0) >= phi.max_exp().unwrap() {
            match rest.div_exact(&phi) {
                Some(q) => {
                    rest = q;
                    out.add_factor(b, 1);
                }
                None => break,
            }
        }
    }
    if rest.max_exp() != Some(0) || !rest.coeffs()[0].abs().is_one() {
        return Err(Error::NotDecomposable);
    }
    if rest.coeffs()[0].is_negative() {
        out.sign = -1;
    }
    Ok(out)
}

/// Euler's totient.
fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// [`factor_cyclotomic`] with every `b` whose `φ_b` fits in the degree as a
/// candidate. Cost grows quadratically with the degree; meant for small inputs.
pub fn factor_cyclotomic_auto(poly: &LaurentPoly) -> Result<CycloFactorization> {
    if poly.is_zero() {
        return Err(Error::NotDecomposable);
    }
    let deg = (poly.max_exp().unwrap() - poly.min_exp()) as u64;
    // φ(b) ≥ √(b/2)
    let bound = 2 * deg * deg + 2;
    factor_cyclotomic(poly, (1..=bound).filter(|&b| totient(b) <= deg))
}

/// `(q^r;q^s)_n = ∏_{i<n} (1 − q^{r+si})`.
pub fn poch_poly(p: PochParams, n: u64) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for i in 0..n as i64 {
        out.mul_one_minus_q_pow(p.r + i * p.s);
        if out.is_zero() {
            break;
        }
    }
    out
}

fn q_factorial_factorization(m: u64) -> CycloFactorization {
    let mut f = CycloFactorization::one();
    for a in 1..=m as i64 {
        f.mul_pow(&factor_one_minus_q_pow(a).unwrap(), 1);
    }
    f
}

/// `[m choose k]_q = (q;q)_m / ((q;q)_k (q;q)_{m−k})`.
pub fn gaussian_binomial(m: u64, k: u64) -> Result<LaurentPoly> {
    if k > m {
        return Err(Error::InvalidArgument(format!(
            "gaussian binomial needs k <= m, got m = {m}, k = {k}"
        )));
    }
    let mut f = q_factorial_factorization(m);
    f.mul_pow(&q_factorial_factorization(k), -1);
    f.mul_pow(&q_factorial_factorization(m - k), -1);
    f.to_laurent()
}

/// The exponents `a` with `(q^r;q^s)_n = ∏(1 − q^a)^{±1}`: the product runs
/// over `r + is`, `0 ≤ i < n`, for `n ≥ 0`, and is the reciprocal of the one
/// over `r − is`, `1 ≤ i ≤ −n`, for `n < 0`.
fn poch_exponents(p: PochParams, n: i64) -> (Vec<i64>, bool) {
    if n >= 0 {
        ((0..n).map(|i| p.r + i * p.s).collect(), false)
    } else {
        ((1..=-n).map(|i| p.r - i * p.s).collect(), true)
    }
}

/// Cyclotomic decomposition of `Q_{𝐫,𝐭}(q;n)`, assembled factor by factor.
pub fn hyper_factorization(h: &HypergeomSpec, n: i64) -> Result<CycloFactorization> {
    let num: Vec<_> = h.num.iter().map(|p| (*p, poch_exponents(*p, n))).collect();
    let den: Vec<_> = h.den.iter().map(|p| (*p, poch_exponents(*p, n))).collect();
    check_vanishing(&num, &den, n)?;
    let mut out = CycloFactorization::one();
    for (side, sgn) in [(&num, 1), (&den, -1)] {
        for (_, (exps, reciprocal)) in side.iter() {
            let k = if *reciprocal { -sgn } else { sgn };
            for &a in exps {
                out.mul_pow(&factor_one_minus_q_pow(a).unwrap(), k);
            }
        }
    }
    Ok(out)
}

type Sided = Vec<(PochParams, (Vec<i64>, bool))>;

fn check_vanishing(num: &Sided, den: &Sided, n: i64) -> Result<()> {
    for (p, (exps, reciprocal)) in num.iter().chain(den.iter()) {
        if *reciprocal && exps.contains(&0) {
            return Err(Error::UndefinedPochhammer { r: p.r, s: p.s, n });
        }
    }
    for (p, (exps, _)) in num {
        if exps.contains(&0) {
            return Err(Error::ZeroPochhammer { r: p.r, s: p.s, n });
        }
    }
    for (p, (exps, _)) in den {
        if exps.contains(&0) {
            return Err(Error::ZeroDenominator { r: p.r, s: p.s, n });
        }
    }
    Ok(())
}

/// The same decomposition, computed by expanding the numerator and
/// denominator of `Q` as polynomials and dividing out cyclotomic factors.
/// Cost is polynomial in the expanded degree; intended for small `n`.
pub fn hyper_factorization_by_division(h: &HypergeomSpec, n: i64) -> Result<CycloFactorization> {
    let num: Vec<_> = h.num.iter().map(|p| (*p, poch_exponents(*p, n))).collect();
    let den: Vec<_> = h.den.iter().map(|p| (*p, poch_exponents(*p, n))).collect();
    check_vanishing(&num, &den, n)?;
    let mut top = LaurentPoly::one();
    let mut bottom = LaurentPoly::one();
    let mut cands = BTreeSet::new();
    for (side, upper) in [(&num, true), (&den, false)] {
        for (_, (exps, reciprocal)) in side.iter() {
            let target = if upper != *reciprocal {
                &mut top
            } else {
                &mut bottom
            };
            for &a in exps {
                target.mul_one_minus_q_pow(a);
                cands.extend(divisors(a.unsigned_abs()));
            }
        }
    }
    let mut f = factor_cyclotomic(&top, cands.iter().copied())?;
    f.mul_pow(&factor_cyclotomic(&bottom, cands.iter().copied())?, -1);
    Ok(f)
}
