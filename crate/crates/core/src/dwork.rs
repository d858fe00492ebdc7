//! Generalized Dwork maps `D_b` on the localization `S_b⁻¹ℤ`.
//!
//! For `b ≥ 1` and `α` whose denominator is coprime to `b`, `D_b(α)` is the
//! unique element of `S_b⁻¹ℤ` with `b·D_b(α) − α ∈ {0, …, b−1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// `gcd(d(α), b) = 1`.
pub fn in_localization(b: u64, alpha: &Rational) -> bool {
    alpha.denom().gcd(&BigInt::from(b)).is_one()
}

fn check(b: u64, alpha: &Rational) -> Result<()> {
    if b == 0 {
        return Err(Error::ZeroIndex);
    }
    if !in_localization(b, alpha) {
        return Err(Error::NotInLocalization {
            b,
            alpha: alpha.clone(),
        });
    }
    Ok(())
}

/// Least positive `a` with `a·b ≡ 1 (mod d(α))`; `1` when `α` is an integer.
pub fn dwork_witness(b: u64, alpha: &Rational) -> Result<BigInt> {
    check(b, alpha)?;
    let d = alpha.denom();
    if d.is_one() {
        return Ok(BigInt::one());
    }
    let e = BigInt::from(b).extended_gcd(d);
    debug_assert!(e.gcd.is_one());
    let a = e.x.mod_floor(d);
    Ok(if a.is_zero() { d.clone() } else { a })
}

fn check_witness(b: u64, alpha: &Rational, a: &BigInt) -> Result<()> {
    check(b, alpha)?;
    if !(a * BigInt::from(b) - 1u32)
        .mod_floor(alpha.denom())
        .is_zero()
    {
        return Err(Error::InvalidWitness {
            b,
            alpha: alpha.clone(),
            a: a.to_i64().unwrap_or(i64::MAX),
        });
    }
    Ok(())
}

/// `D_b(α) = aα + ⌊(α−1)/b − aα⌋ + 1` with the least positive witness `a`.
pub fn dwork_map(b: u64, alpha: &Rational) -> Result<Rational> {
    let a = dwork_witness(b, alpha)?;
    Ok(closed_formula(b, alpha, &a))
}

/// The same closed formula evaluated with a caller-supplied witness `a`.
/// The value does not depend on which witness is used.
pub fn dwork_map_with(b: u64, alpha: &Rational, a: &BigInt) -> Result<Rational> {
    check_witness(b, alpha, a)?;
    Ok(closed_formula(b, alpha, a))
}

fn closed_formula(b: u64, alpha: &Rational, a: &BigInt) -> Rational {
    let a_alpha = alpha * Rational::from_integer(a.clone());
    let inner = (alpha - 1) / (b as i64) - &a_alpha;
    a_alpha + Rational::from_integer(inner.floor()) + 1
}

/// `D_b(α) = ⟨aα⟩ − ⌊⟨aα⟩ − α/b⌋`, valid for every `b`.
pub fn dwork_map_large_b(b: u64, alpha: &Rational, a: &BigInt) -> Result<Rational> {
    check_witness(b, alpha, a)?;
    let angle = (alpha * Rational::from_integer(a.clone())).angle();
    let fl = (&angle - alpha / (b as i64)).floor();
    Ok(angle - Rational::from_integer(fl))
}

/// The large-`b` shortcut: for `b ≥ 𝔫_α` the map is `⟨aα⟩`, or `0` when
/// `α ∈ ℤ≤0`. Returns `None` below the threshold.
pub fn dwork_map_simplified(b: u64, alpha: &Rational, a: &BigInt) -> Result<Option<Rational>> {
    check_witness(b, alpha, a)?;
    if BigInt::from(b) < alpha.frak_n() {
        return Ok(None);
    }
    if alpha.is_nonpositive_integer() {
        Ok(Some(Rational::zero()))
    } else {
        Ok(Some((alpha * Rational::from_integer(a.clone())).angle()))
    }
}

/// Whether `b·θ − α ∈ {0, …, b−1}`.
pub fn satisfies_defining_relation(b: u64, alpha: &Rational, theta: &Rational) -> bool {
    let t = theta * (b as i64) - alpha;
    t.is_integer() && !t.is_negative() && t.numer() < &BigInt::from(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Search `θ = (α + j)/b` for `j ∈ {0..b-1}` with denominator coprime to `b`.
    fn brute_force(b: u64, alpha: &Rational) -> Rational {
        let hits: Vec<Rational> = (0..b as i64)
            .map(|j| (alpha + j) / (b as i64))
            .filter(|t| in_localization(b, t))
            .collect();
        assert_eq!(hits.len(), 1, "uniqueness fails for b={b}, alpha={alpha}");
        hits.into_iter().next().unwrap()
    }

    #[test]
    fn localization_examples() {
        assert!(in_localization(3, &q(1, 2)));
        assert!(!in_localization(2, &q(1, 2)));
        assert!(in_localization(1, &q(7, 12)));
    }

    #[test]
    fn identity_at_one() {
        assert_eq!(dwork_map(1, &q(5, 7)).unwrap(), q(5, 7));
        assert_eq!(dwork_map(1, &q(-9, 4)).unwrap(), q(-9, 4));
    }

    #[test]
    fn fixes_one() {
        for p in 1..40 {
            assert_eq!(dwork_map(p, &q(1, 1)).unwrap(), q(1, 1));
        }
    }

    #[test]
    fn half_at_three() {
        assert_eq!(brute_force(3, &q(1, 2)), q(1, 2));
        assert_eq!(dwork_map(3, &q(1, 2)).unwrap(), q(1, 2));
    }

    #[test]
    fn large_b_examples() {
        let a = BigInt::from(2);
        assert_eq!(dwork_map_large_b(5, &q(1, 3), &a).unwrap(), q(2, 3));
        assert!(satisfies_defining_relation(5, &q(1, 3), &q(2, 3)));
        assert_eq!(
            dwork_map_simplified(5, &q(1, 3), &a).unwrap(),
            Some(q(2, 3))
        );
        assert_eq!(
            dwork_map_large_b(3, &q(1, 2), &BigInt::one()).unwrap(),
            dwork_map(3, &q(1, 2)).unwrap()
        );
        // α ∈ ℤ≤0 and b ≥ 𝔫_α gives 0
        for alpha in [0, -1, -4] {
            let x = q(alpha, 1);
            let b = (x.frak_n().to_u64().unwrap()).max(1);
            let one = BigInt::one();
            assert_eq!(dwork_map_simplified(b, &x, &one).unwrap(), Some(q(0, 1)));
            assert_eq!(dwork_map(b, &x).unwrap(), q(0, 1));
        }
    }

    #[test]
    fn below_threshold_is_none() {
        // 𝔫_{7/3} = 7
        let a = dwork_witness(4, &q(7, 3)).unwrap();
        assert_eq!(dwork_map_simplified(4, &q(7, 3), &a).unwrap(), None);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            dwork_map(2, &q(1, 2)),
            Err(Error::NotInLocalization { .. })
        ));
        assert!(matches!(
            dwork_map_with(2, &q(1, 3), &BigInt::from(1)),
            Err(Error::InvalidWitness { .. })
        ));
        assert_eq!(dwork_map(0, &q(1, 2)), Err(Error::ZeroIndex));
    }

    #[test]
    fn closed_formula_matches_search() {
        for b in 1..=20u64 {
            for d in 1..=12i64 {
                for n in -30..=30 {
                    let alpha = q(n, d);
                    if !in_localization(b, &alpha) {
                        continue;
                    }
                    let got = dwork_map(b, &alpha).unwrap();
                    assert_eq!(got, brute_force(b, &alpha), "b={b} alpha={alpha}");
                    assert!(satisfies_defining_relation(b, &alpha, &got));
                    // lies in (1/d(α))ℤ
                    assert!((&got * Rational::from_integer(alpha.denom().clone())).is_integer());
                }
            }
        }
    }

    #[test]
    fn composition() {
        for b in 1..=12u64 {
            for c in 1..=12u64 {
                for d in 1..=12i64 {
                    for n in -15..=15 {
                        let alpha = q(n, d);
                        if !in_localization(b * c, &alpha) {
                            continue;
                        }
                        let inner = dwork_map(c, &alpha).unwrap();
                        assert_eq!(
                            dwork_map(b, &inner).unwrap(),
                            dwork_map(b * c, &alpha).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn iterates_match_powers() {
        let alpha = q(-7, 5);
        let mut x = alpha.clone();
        for k in 1..=6u32 {
            x = dwork_map(3, &x).unwrap();
            assert_eq!(x, dwork_map(3u64.pow(k), &alpha).unwrap());
        }
    }

    #[test]
    fn stable_on_residue_classes() {
        let alpha = q(-11, 7);
        let m = alpha.frak_n().to_u64().unwrap();
        for b in m..m + 30 {
            if !in_localization(b, &alpha) {
                continue;
            }
            assert_eq!(
                dwork_map(b, &alpha).unwrap(),
                dwork_map(b + 7, &alpha).unwrap()
            );
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn witness_independence(b in 1u64..60, n in -200i64..200, d in 1i64..40, k in 0i64..5) {
                let alpha = q(n, d);
                prop_assume!(in_localization(b, &alpha));
                let a = dwork_witness(b, &alpha).unwrap();
                let other = &a + BigInt::from(k) * alpha.denom();
                let x = dwork_map(b, &alpha).unwrap();
                prop_assert_eq!(&x, &dwork_map_with(b, &alpha, &other).unwrap());
                prop_assert_eq!(&x, &dwork_map_large_b(b, &alpha, &other).unwrap());
                prop_assert!(satisfies_defining_relation(b, &alpha, &x));
                if let Some(y) = dwork_map_simplified(b, &alpha, &other).unwrap() {
                    prop_assert_eq!(x, y);
                }
            }
        }
    }
}
