//! Cyclotomic and q-adic valuations of q-Pochhammer symbols and of
//! q-hypergeometric terms.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{self, Rational};
use crate::dwork::dwork_map;
use crate::error::{Error, Result};

/// The pair `(r, s)` behind `(q^r; q^s)_n`. Never reduced: `(1,2)` and
/// `(2,4)` are different q-analogs of `1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PochParams {
    pub r: i64,
    pub s: i64,
}

impl PochParams {
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if s == 0 {
            return Err(Error::ZeroModulus { r, s });
        }
        Ok(PochParams { r, s })
    }

    /// `α = r/s`.
    pub fn alpha(&self) -> Rational {
        Rational::new(self.r, self.s)
    }

    /// `(r − s, −s)`, the pair for which `(q^r;q^s)_n = 1/(q^{r−s};q^{−s})_{−n}`.
    pub fn reflected(&self) -> PochParams {
        PochParams {
            r: self.r - self.s,
            s: -self.s,
        }
    }
}

/// `(q^r;q^s)_n` is defined unless `n < 0` and a factor `1 − q^0` lands in
/// the reciprocal product.
pub fn poch_defined(p: PochParams, n: i64) -> bool {
    if n >= 0 {
        return true;
    }
    let a = p.alpha();
    !a.is_positive_integer() || Rational::from(n) > -a
}

/// For `n ≥ 0`, nonzero unless `α ∈ ℤ≤0` and `n > −α`; a defined symbol with
/// `n < 0` is never zero.
pub fn poch_nonzero(p: PochParams, n: i64) -> bool {
    if n < 0 {
        return true;
    }
    let a = p.alpha();
    !a.is_nonpositive_integer() || Rational::from(n) <= -a
}

fn check_poch(p: PochParams, n: i64) -> Result<()> {
    if !poch_defined(p, n) {
        return Err(Error::UndefinedPochhammer { r: p.r, s: p.s, n });
    }
    if !poch_nonzero(p, n) {
        return Err(Error::ZeroPochhammer { r: p.r, s: p.s, n });
    }
    Ok(())
}

/// The data of `x ↦ δ_b(r, s, x)`: either identically zero, or
/// `⌊c·x − γ⌋ + 1` with `γ ∈ (0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaStep {
    pub c: u64,
    pub gamma: Option<Rational>,
}

impl DeltaStep {
    pub fn new(b: u64, p: PochParams) -> Self {
        assert!(b >= 1, "b must be positive");
        let c = arith::gcd(p.r, p.s).gcd(&b);
        let b1 = b / c;
        let s1 = p.s / c as i64;
        if arith::gcd(s1, b1 as i64) != 1 {
            return DeltaStep { c, gamma: None };
        }
        let alpha = p.alpha();
        let d = dwork_map(b1, &alpha).expect("d(α) divides s/c, which is coprime to b/c");
        let gamma = d + Rational::from_integer((Rational::one() - &alpha).floor()) / b1 as i64;
        assert!(
            !gamma.is_negative() && !gamma.is_zero() && gamma <= Rational::one(),
            "γ = {gamma} outside (0,1] for b = {b}, (r,s) = ({},{})",
            p.r,
            p.s
        );
        DeltaStep {
            c,
            gamma: Some(gamma),
        }
    }

    pub fn eval(&self, x: &Rational) -> i64 {
        match &self.gamma {
            None => 0,
            Some(g) => (x * self.c as i64 - g).floor_i64() + 1,
        }
    }

    /// Jump abscissas `(γ + k)/c` in `(0, 1]`, ascending.
    pub fn jumps(&self) -> Vec<Rational> {
        match &self.gamma {
            None => Vec::new(),
            Some(g) => (0..self.c as i64)
                .map(|k| (g + k) / self.c as i64)
                .collect(),
        }
    }

    /// `δ_b(r,s,1)`: `c` when active, else 0.
    pub fn slope(&self) -> i64 {
        if self.gamma.is_some() {
            self.c as i64
        } else {
            0
        }
    }
}

/// `δ_b(r, s, x)`.
pub fn delta_small(b: u64, p: PochParams, x: &Rational) -> i64 {
    DeltaStep::new(b, p).eval(x)
}

/// `v_{φ_b}((q^r;q^s)_n)`.
pub fn poch_phi_valuation(b: u64, p: PochParams, n: i64) -> Result<i64> {
    if b == 0 {
        return Err(Error::ZeroIndex);
    }
    check_poch(p, n)?;
    Ok(PochSteps::new(b, p).valuation(b, n))
}

/// `v_q((q^r;q^s)_n)`.
pub fn poch_q_valuation(p: PochParams, n: i64) -> Result<i64> {
    check_poch(p, n)?;
    Ok(q_valuation_unchecked(p, n))
}

fn q_valuation_unchecked(p: PochParams, n: i64) -> i64 {
    if n < 0 {
        return -q_valuation_unchecked(p.reflected(), -n);
    }
    (0..n).map(|i| p.r + i * p.s).filter(|&e| e < 0).sum()
}

/// Forward and reflected step data for one pair at a fixed `b`.
#[derive(Clone, Debug)]
struct PochSteps {
    fwd: DeltaStep,
    refl: DeltaStep,
}

impl PochSteps {
    fn new(b: u64, p: PochParams) -> Self {
        PochSteps {
            fwd: DeltaStep::new(b, p),
            refl: DeltaStep::new(b, p.reflected()),
        }
    }

    fn valuation(&self, b: u64, n: i64) -> i64 {
        if n >= 0 {
            self.fwd.eval(&Rational::new(n, b as i64))
        } else {
            -self.refl.eval(&Rational::new(-n, b as i64))
        }
    }
}

/// `Q_{𝐫,𝐭}(q;n) = ∏(q^{r_i};q^{s_i})_n / ∏(q^{t_j};q^{u_j})_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypergeomSpec {
    pub num: Vec<PochParams>,
    pub den: Vec<PochParams>,
}

impl HypergeomSpec {
    pub fn new(num: Vec<PochParams>, den: Vec<PochParams>) -> Self {
        HypergeomSpec { num, den }
    }

    /// Convenience constructor from raw pairs; panics on `s = 0`.
    pub fn from_pairs(num: &[(i64, i64)], den: &[(i64, i64)]) -> Self {
        let conv = |v: &[(i64, i64)]| {
            v.iter()
                .map(|&(r, s)| PochParams::new(r, s).expect("nonzero modulus"))
                .collect()
        };
        HypergeomSpec {
            num: conv(num),
            den: conv(den),
        }
    }

    /// `d_{𝐫,𝐭}`: lcm of the `|s_i|` and `|u_j|`, 1 for the empty spec.
    pub fn d(&self) -> u64 {
        self.all()
            .fold(1, |acc, p| arith::lcm(acc, p.s.unsigned_abs()))
    }

    pub fn alphas(&self) -> Vec<Rational> {
        self.num.iter().map(PochParams::alpha).collect()
    }

    pub fn betas(&self) -> Vec<Rational> {
        self.den.iter().map(PochParams::alpha).collect()
    }

    fn all(&self) -> impl Iterator<Item = &PochParams> {
        self.num.iter().chain(self.den.iter())
    }

    /// Every `β_j ∉ ℤ≤0`.
    pub fn defined_nonneg(&self) -> bool {
        self.den.iter().all(|p| !p.alpha().is_nonpositive_integer())
    }

    /// Every `α_i ∉ ℤ≤0`.
    pub fn nonvanishing(&self) -> bool {
        self.num.iter().all(|p| !p.alpha().is_nonpositive_integer())
    }

    /// Every `α_i ∉ ℤ>0`.
    pub fn defined_neg(&self) -> bool {
        self.num.iter().all(|p| !p.alpha().is_positive_integer())
    }

    /// First pair with a parameter in `ℤ≤0`, if any.
    pub fn degenerate_pair(&self) -> Option<PochParams> {
        self.all()
            .find(|p| p.alpha().is_nonpositive_integer())
            .copied()
    }

    /// The spec `(𝐭′, 𝐫′)` with `Q_{𝐫,𝐭}(q;n) = Q_{𝐭′,𝐫′}(q;−n)`.
    pub fn swap_reflect(&self) -> HypergeomSpec {
        HypergeomSpec {
            num: self.den.iter().map(PochParams::reflected).collect(),
            den: self.num.iter().map(PochParams::reflected).collect(),
        }
    }

    /// Whether the term at `n` is defined and nonzero.
    pub fn check_term(&self, n: i64) -> Result<()> {
        for p in self.all() {
            if !poch_defined(*p, n) {
                return Err(Error::UndefinedPochhammer { r: p.r, s: p.s, n });
            }
        }
        for p in &self.num {
            if !poch_nonzero(*p, n) {
                return Err(Error::ZeroPochhammer { r: p.r, s: p.s, n });
            }
        }
        for p in &self.den {
            if !poch_nonzero(*p, n) {
                return Err(Error::ZeroDenominator { r: p.r, s: p.s, n });
            }
        }
        Ok(())
    }
}

/// `Δ_b^{𝐫,𝐭}(x) = Σ δ_b(r_i,s_i,x) − Σ δ_b(t_j,u_j,x)`.
pub fn landau_delta(b: u64, h: &HypergeomSpec, x: &Rational) -> i64 {
    let num: i64 = h.num.iter().map(|p| delta_small(b, *p, x)).sum();
    let den: i64 = h.den.iter().map(|p| delta_small(b, *p, x)).sum();
    num - den
}

/// Precomputed step data of every factor of `h` at one `b`, for sweeping `n`.
#[derive(Clone, Debug)]
pub struct HyperSteps {
    b: u64,
    num: Vec<PochSteps>,
    den: Vec<PochSteps>,
}

impl HyperSteps {
    pub fn new(b: u64, h: &HypergeomSpec) -> Self {
        assert!(b >= 1, "b must be positive");
        HyperSteps {
            b,
            num: h.num.iter().map(|p| PochSteps::new(b, *p)).collect(),
            den: h.den.iter().map(|p| PochSteps::new(b, *p)).collect(),
        }
    }

    /// `v_{φ_b}` at `n`, assuming the term is defined and nonzero.
    pub fn valuation(&self, n: i64) -> i64 {
        let num: i64 = self.num.iter().map(|s| s.valuation(self.b, n)).sum();
        let den: i64 = self.den.iter().map(|s| s.valuation(self.b, n)).sum();
        num - den
    }
}

/// `v_{φ_b}(Q_{𝐫,𝐭}(q;n))`.
pub fn hyper_phi_valuation(b: u64, h: &HypergeomSpec, n: i64) -> Result<i64> {
    if b == 0 {
        return Err(Error::ZeroIndex);
    }
    h.check_term(n)?;
    Ok(HyperSteps::new(b, h).valuation(n))
}

/// The coefficient `s` in `v_q(Q) = s·C(n,2) + O(n)`.
pub fn hyper_q_valuation_slope(h: &HypergeomSpec) -> i64 {
    let num: i64 = h.num.iter().map(|p| p.s).filter(|&s| s < 0).sum();
    let den: i64 = h.den.iter().map(|p| p.s).filter(|&s| s < 0).sum();
    num - den
}

/// `v_q(Q_{𝐫,𝐭}(q;n))`.
pub fn hyper_q_valuation(h: &HypergeomSpec, n: i64) -> Result<i64> {
    h.check_term(n)?;
    let num: i64 = h.num.iter().map(|p| q_valuation_unchecked(*p, n)).sum();
    let den: i64 = h.den.iter().map(|p| q_valuation_unchecked(*p, n)).sum();
    Ok(num - den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(r: i64, s: i64) -> PochParams {
        PochParams::new(r, s).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn binom32() -> HypergeomSpec {
        HypergeomSpec::from_pairs(&[(1, 3), (2, 3), (3, 3)], &[(1, 2), (1, 1), (2, 2)])
    }

    #[test]
    fn zero_modulus() {
        assert_eq!(
            PochParams::new(1, 0),
            Err(Error::ZeroModulus { r: 1, s: 0 })
        );
    }

    #[test]
    fn domain_predicates() {
        assert!(poch_defined(pp(-2, 1), 3));
        assert!(!poch_nonzero(pp(-2, 1), 3));
        assert!(poch_nonzero(pp(-2, 1), 2));
        assert!(poch_defined(pp(1, 2), -5) && poch_nonzero(pp(1, 2), -5));
        assert!(!poch_defined(pp(2, 1), -2));
        assert!(poch_defined(pp(2, 1), -1));
    }

    #[test]
    fn delta_examples() {
        for n in 0..30 {
            assert_eq!(delta_small(2, pp(2, 4), &q(n, 2)), n);
            assert_eq!(delta_small(5, pp(1, 1), &q(n, 5)), n.div_euclid(5));
        }
        assert_eq!(delta_small(3, pp(2, 6), &q(1, 3)), 0);
        assert_eq!(DeltaStep::new(3, pp(2, 6)).gamma, None);
    }

    #[test]
    fn phi_valuation_examples() {
        assert_eq!(poch_phi_valuation(3, pp(1, 1), 7), Ok(2));
        for n in 0..20 {
            assert_eq!(poch_phi_valuation(2, pp(1, 2), n), Ok(0));
        }
        // (q;q³)_{−2} = 1/((1−q^{−2})(1−q^{−5})) has no φ₃ factor
        assert_eq!(poch_phi_valuation(3, pp(1, 3), -2), Ok(0));
        assert_eq!(
            poch_phi_valuation(1, pp(-2, 1), 3),
            Err(Error::ZeroPochhammer { r: -2, s: 1, n: 3 })
        );
        assert_eq!(
            poch_phi_valuation(1, pp(2, 1), -2),
            Err(Error::UndefinedPochhammer { r: 2, s: 1, n: -2 })
        );
    }

    #[test]
    fn q_valuation_examples() {
        assert_eq!(poch_q_valuation(pp(-1, -2), 3), Ok(-9));
        assert_eq!(poch_q_valuation(pp(1, 2), 10), Ok(0));
        assert_eq!(poch_q_valuation(pp(-3, 2), 4), Ok(-4));
        // (q;q)_{−1} = 1/(1−q^0) is undefined; (q^2;q)_{−1} = 1/(1−q)
        assert_eq!(poch_q_valuation(pp(2, 1), -1), Ok(0));
        // (q;q^2)_{−1} = 1/(1−q^{−1})
        assert_eq!(poch_q_valuation(pp(1, 2), -1), Ok(1));
    }

    #[test]
    fn hyper_examples() {
        let h = binom32();
        assert_eq!(hyper_phi_valuation(2, &h, 1), Ok(0));
        assert_eq!(hyper_phi_valuation(3, &h, 1), Ok(1));
        let h = HypergeomSpec::from_pairs(&[(1, 3), (5, 7), (-3, 2)], &[(2, 5)]);
        for n in 0..25 {
            assert_eq!(hyper_phi_valuation(1, &h, n), Ok(2 * n));
        }
    }

    #[test]
    fn slope_and_q_valuation() {
        assert_eq!(hyper_q_valuation_slope(&binom32()), 0);
        let a = HypergeomSpec::from_pairs(&[(1, -2)], &[]);
        assert_eq!(hyper_q_valuation_slope(&a), -2);
        let b = HypergeomSpec::from_pairs(&[], &[(1, -3)]);
        assert_eq!(hyper_q_valuation_slope(&b), 3);
        for n in 0..15 {
            assert_eq!(hyper_q_valuation(&binom32(), n), Ok(0));
        }
        let c = HypergeomSpec::from_pairs(&[(-1, -2)], &[]);
        assert_eq!(hyper_q_valuation(&c, 3), Ok(-9));
        let c = HypergeomSpec::from_pairs(&[], &[(-1, -2)]);
        assert_eq!(hyper_q_valuation(&c, 3), Ok(9));
    }

    #[test]
    fn term_error_precedence() {
        let h = HypergeomSpec::from_pairs(&[(-1, 1)], &[(-2, 1)]);
        assert!(matches!(h.check_term(5), Err(Error::ZeroPochhammer { .. })));
        let h = HypergeomSpec::from_pairs(&[(1, 1)], &[(-2, 1)]);
        assert!(matches!(
            h.check_term(5),
            Err(Error::ZeroDenominator { .. })
        ));
        let h = HypergeomSpec::from_pairs(&[(-1, 1)], &[(3, 1)]);
        assert!(matches!(
            h.check_term(-4),
            Err(Error::UndefinedPochhammer { .. })
        ));
    }

    #[test]
    fn swap_reflect_example() {
        let h = HypergeomSpec::from_pairs(&[(1, 2)], &[]);
        assert_eq!(
            h.swap_reflect(),
            HypergeomSpec::from_pairs(&[], &[(-1, -2)])
        );
        assert_eq!(h.swap_reflect().swap_reflect(), h);
    }

    #[test]
    fn d_uses_magnitudes() {
        let h = HypergeomSpec::from_pairs(&[(1, -4), (1, 6)], &[(1, 1)]);
        assert_eq!(h.d(), 12);
        assert_eq!(HypergeomSpec::default().d(), 1);
    }

    #[test]
    fn reflection_lemma_grid() {
        for b in 1..=20u64 {
            for r in -12..=12 {
                for s in (-12..=12).filter(|&s| s != 0) {
                    for n in -30..=30 {
                        let x = q(n, b as i64);
                        assert_eq!(
                            delta_small(b, pp(r, s), &-&x),
                            -delta_small(b, pp(r - s, -s), &x),
                            "b={b} r={r} s={s} n={n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_in_unit_interval_and_divisible_case() {
        for b in 1..=30u64 {
            for r in -12..=12 {
                for s in (-12..=12).filter(|&s| s != 0) {
                    let st = DeltaStep::new(b, pp(r, s));
                    if let Some(g) = &st.gamma {
                        assert!(g > &Rational::zero() && g <= &Rational::one());
                    }
                    if r % b as i64 == 0 && s % b as i64 == 0 {
                        for n in (0..20).filter(|&n| poch_nonzero(pp(r, s), n)) {
                            assert_eq!(poch_phi_valuation(b, pp(r, s), n), Ok(n));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn legendre_factorials() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for n in 1..=50i64 {
                let mut total = 0;
                let mut pk = p;
                while pk <= n as u64 {
                    total += poch_phi_valuation(pk, pp(1, 1), n).unwrap();
                    pk *= p;
                }
                let legendre: i64 = (1..=n as u64)
                    .map(|k| arith::p_adic_valuation(k, p) as i64)
                    .sum();
                assert_eq!(total, legendre, "p={p} n={n}");
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn landau_is_sum_of_factor_valuations(
                b in 1u64..40,
                n in -25i64..40,
                num in proptest::collection::vec((-12i64..=12, 1i64..=12), 0..4),
                den in proptest::collection::vec((-12i64..=12, -12i64..=-1), 0..3),
            ) {
                let h = HypergeomSpec::from_pairs(&num, &den);
                prop_assume!(h.check_term(n).is_ok());
                let mut total = 0;
                for p in &h.num {
                    total += poch_phi_valuation(b, *p, n).unwrap();
                }
                for p in &h.den {
                    total -= poch_phi_valuation(b, *p, n).unwrap();
                }
                prop_assert_eq!(hyper_phi_valuation(b, &h, n).unwrap(), total);
                if n >= 0 {
                    prop_assert_eq!(landau_delta(b, &h, &Rational::new(n, b as i64)), total);
                }
            }
        }
    }
}
