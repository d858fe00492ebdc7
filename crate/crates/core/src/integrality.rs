//! Finite decision procedures for q-integrality, Laurent integrality,
//! classical N-integrality and factorial ratios.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::qvaluation::{hyper_q_valuation_slope, HyperSteps, HypergeomSpec};
use crate::steps::{
    classical_landau, classical_xi_table, delta_jump_table, denominator_lcm, large_b_threshold,
    residue, xi_jump_table,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Q,
    Laurent,
    Negative,
    Bidirectional,
    Classical,
    Factorial,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "q" => Mode::Q,
            "laurent" => Mode::Laurent,
            "negative" => Mode::Negative,
            "bidirectional" => Mode::Bidirectional,
            "classical" => Mode::Classical,
            "factorial" => Mode::Factorial,
            _ => return Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        })
    }
}

/// A point where a step function is negative. `b` is the index of `Ξ(b, ·)`
/// or of `Δ_b`, the multiplier `a` in classical mode, and absent for
/// factorial ratios.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub b: Option<u64>,
    pub abscissa: Rational,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub decision: bool,
    pub mode: Mode,
    pub witnesses: Vec<Witness>,
    pub slope: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub period_slopes: Vec<(u64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(mode: Mode, witnesses: Vec<Witness>, slope: Option<i64>) -> Self {
        let decision = witnesses.is_empty() && slope.is_none_or(|s| s >= 0);
        Verdict {
            decision,
            mode,
            witnesses,
            slope,
            period_slopes: Vec::new(),
            route: None,
            notes: Vec::new(),
        }
    }
}

fn check_nondegenerate(h: &HypergeomSpec) -> Result<()> {
    match h.degenerate_pair() {
        Some(p) => Err(Error::DegenerateParameter { r: p.r, s: p.s }),
        None => Ok(()),
    }
}

/// For each `b ∈ {1, …, d}` where `Ξ(b, ·)` dips below 0, the first point
/// (in Christol order) where it does.
pub fn xi_witnesses(h: &HypergeomSpec) -> Result<Vec<Witness>> {
    check_nondegenerate(h)?;
    let tables = (1..=h.d())
        .into_par_iter()
        .map(|b| xi_jump_table(b, h).map(|t| (b, t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(tables
        .into_iter()
        .filter_map(|(b, t)| {
            t.first_negative().map(|(x, v)| Witness {
                b: Some(b),
                abscissa: x,
                value: v,
            })
        })
        .collect())
}

pub fn decide_q_integral(h: &HypergeomSpec) -> Result<Verdict> {
    let w = xi_witnesses(h)?;
    let mut v = Verdict::new(Mode::Q, w, Some(hyper_q_valuation_slope(h)));
    if h.num.iter().chain(&h.den).any(|p| p.s < 0) {
        v.route = Some("mixed-sign moduli: slope condition with the Ξ criterion".into());
    }
    Ok(v)
}

pub fn decide_laurent_integral(h: &HypergeomSpec) -> Result<Verdict> {
    Ok(Verdict::new(Mode::Laurent, xi_witnesses(h)?, None))
}

/// Integrality of `Q(q; −n)` for `n ≥ 0`, via the swapped reflected spec.
pub fn decide_negative_q_integral(h: &HypergeomSpec) -> Result<Verdict> {
    let mut v = decide_laurent_integral(&h.swap_reflect())?;
    v.mode = Mode::Negative;
    Ok(v)
}

/// Whether `Q(q; n) ∈ ℤ[q⁻¹, q]` for every `n ∈ ℤ`.
///
/// Requires `Δ_b(1) = 0` for every `b` and `Δ_b ≥ 0` on `[0, 1]` for every
/// `b`. Large `b` is covered by `Ξ`; the finitely many `b` below the
/// large-`b` threshold are checked directly on their jump tables.
pub fn decide_bidirectional(h: &HypergeomSpec) -> Result<Verdict> {
    let mut witnesses = xi_witnesses(h)?;
    let d = h.d();
    let period_slopes: Vec<(u64, i64)> = (1..=d)
        .map(|b| (b, delta_jump_table(b, h).period_slope.unwrap_or(0)))
        .collect();
    let top = large_b_threshold(h);
    let direct: Vec<Witness> = (1..top)
        .into_par_iter()
        .filter_map(|b| {
            let t = delta_jump_table(b, h);
            let (m, x) = t.min();
            (m < 0).then(|| Witness {
                b: Some(b),
                abscissa: x.expect("a negative minimum is reached at a jump"),
                value: m,
            })
        })
        .collect();
    let mut notes = Vec::new();
    if !direct.is_empty() {
        notes.push(format!(
            "Δ_b is negative on [0,1] for b in {:?}",
            direct.iter().filter_map(|w| w.b).collect::<Vec<_>>()
        ));
    }
    witnesses.extend(direct);
    if h.alphas().iter().any(Rational::is_positive_integer) {
        notes.push(
            "a numerator parameter is a positive integer: terms at n < 0 are undefined".into(),
        );
    }
    if h.betas().iter().any(Rational::is_positive_integer) {
        notes.push("a denominator parameter is a positive integer: terms at n < 0 vanish".into());
    }
    let flat = period_slopes.iter().all(|&(_, s)| s == 0);
    let mut v = Verdict::new(Mode::Bidirectional, witnesses, None);
    v.decision = v.decision && flat;
    v.period_slopes = period_slopes;
    v.notes = notes;
    Ok(v)
}

/// Christol's criterion: `ξ(a, ·) ≥ 0` for every `a ∈ {1, …, d}` coprime to `d`.
pub fn decide_n_integral_classical(alpha: &[Rational], beta: &[Rational]) -> Result<Verdict> {
    if let Some(x) = alpha
        .iter()
        .chain(beta)
        .find(|x| x.is_nonpositive_integer())
    {
        return Err(Error::DegenerateParameter {
            r: x.numer().try_into().unwrap_or(i64::MIN),
            s: x.denom().try_into().unwrap_or(i64::MIN),
        });
    }
    let d = denominator_lcm(&[alpha, beta].concat());
    let mut witnesses = Vec::new();
    for a in (1..=d).filter(|a| a.gcd(&d) == 1) {
        if let Some((x, v)) = classical_xi_table(alpha, beta, a)?.first_negative() {
            witnesses.push(Witness {
                b: Some(a),
                abscissa: x,
                value: v,
            });
        }
    }
    Ok(Verdict::new(Mode::Classical, witnesses, None))
}

/// `∏[e_i n]!_q / ∏[f_j n]!_q` is q-integral iff `Δ_{e,f} ≥ 0` on `[0, 1]`.
pub fn decide_factorial_ratio(e: &[u64], f: &[u64]) -> Result<Verdict> {
    if let Some(&z) = e.iter().chain(f).find(|&&k| k == 0) {
        return Err(Error::InvalidArgument(format!(
            "factorial multipliers must be positive, got {z}"
        )));
    }
    let mut points: Vec<Rational> = e
        .iter()
        .chain(f)
        .flat_map(|&k| (1..=k as i64).map(move |j| Rational::new(j, k as i64)))
        .collect();
    points.sort();
    points.dedup();
    let witnesses = points
        .into_iter()
        .map(|x| (classical_landau(e, f, &x), x))
        .filter(|(v, _)| *v < 0)
        .take(1)
        .map(|(value, abscissa)| Witness {
            b: None,
            abscissa,
            value,
        })
        .collect();
    let slope = e.iter().sum::<u64>() as i64 - f.iter().sum::<u64>() as i64;
    let mut v = Verdict::new(Mode::Factorial, witnesses, None);
    v.slope = Some(slope);
    Ok(v)
}

/// The Pochhammer spec of `∏(q;q)_{e_i n} / ∏(q;q)_{f_j n}`, using
/// `(q;q)_{kn} = ∏_{j=1}^{k} (q^j; q^k)_n`.
pub fn factorial_ratio_spec(e: &[u64], f: &[u64]) -> HypergeomSpec {
    let expand = |v: &[u64]| -> Vec<(i64, i64)> {
        v.iter()
            .flat_map(|&k| (1..=k as i64).map(move |j| (j, k as i64)))
            .collect()
    };
    HypergeomSpec::from_pairs(&expand(e), &expand(f))
}

pub fn decide(mode: Mode, h: &HypergeomSpec) -> Result<Verdict> {
    match mode {
        Mode::Q => decide_q_integral(h),
        Mode::Laurent => decide_laurent_integral(h),
        Mode::Negative => decide_negative_q_integral(h),
        Mode::Bidirectional => decide_bidirectional(h),
        Mode::Classical => decide_n_integral_classical(&h.alphas(), &h.betas()),
        Mode::Factorial => Err(Error::InvalidArgument(
            "factorial mode takes multiplier lists".into(),
        )),
    }
}

/// A concrete index with negative valuation behind a `Ξ` witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedWitness {
    pub b: u64,
    pub n: i64,
    pub valuation: i64,
}

/// Scans `b ≡ b* (mod d)` from the large-`b` threshold over three periods,
/// and `n ∈ {0, …, b}`, for a negative `φ_b`-valuation of the term.
pub fn lift_witness(h: &HypergeomSpec, w: &Witness) -> Option<LiftedWitness> {
    let d = h.d();
    let target = residue(w.b?, d);
    let lo = large_b_threshold(h).max(1);
    let start = lo + (target + d - residue(lo, d)) % d;
    (0..3).map(|k| start + k * d).find_map(|b| {
        let steps = HyperSteps::new(b, h);
        (0..=b as i64)
            .map(|n| (n, steps.valuation(n)))
            .find(|&(_, v)| v < 0)
            .map(|(n, valuation)| LiftedWitness { b, n, valuation })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn spec(num: &[(i64, i64)], den: &[(i64, i64)]) -> HypergeomSpec {
        HypergeomSpec::from_pairs(num, den)
    }

    fn first() -> HypergeomSpec {
        spec(&[(1, 3), (2, 3)], &[(1, 2), (1, 1)])
    }

    fn binom32() -> HypergeomSpec {
        spec(&[(1, 3), (2, 3), (3, 3)], &[(1, 2), (1, 1), (2, 2)])
    }

    fn w(b: Option<u64>, x: Rational, value: i64) -> Witness {
        Witness {
            b,
            abscissa: x,
            value,
        }
    }

    #[test]
    fn q_integral_examples() {
        let v = decide_q_integral(&first()).unwrap();
        assert!(!v.decision);
        assert_eq!(
            v.witnesses,
            vec![w(Some(3), q(1, 2), -1), w(Some(6), q(1, 1), -1)]
        );

        assert!(decide_q_integral(&binom32()).unwrap().decision);

        let v =
            decide_q_integral(&spec(&[(1, 9), (4, 9), (5, 9)], &[(1, 3), (1, 1), (1, 1)])).unwrap();
        assert!(!v.decision);
        assert!(v
            .witnesses
            .iter()
            .any(|x| x.b == Some(3) && x.abscissa == q(1, 1)));

        let repaired = spec(
            &[(1, 9), (4, 9), (5, 9), (9, 9)],
            &[(1, 3), (1, 1), (1, 1), (1, 1)],
        );
        assert!(decide_q_integral(&repaired).unwrap().decision);
    }

    #[test]
    fn laurent_examples() {
        assert!(
            decide_laurent_integral(&spec(&[(-1, -1)], &[]))
                .unwrap()
                .decision
        );
        assert_eq!(
            decide_laurent_integral(&spec(&[(1, -1)], &[])),
            Err(Error::DegenerateParameter { r: 1, s: -1 })
        );
        let v = decide_laurent_integral(&first()).unwrap();
        assert!(!v.decision);
        assert_eq!(
            v.witnesses,
            vec![w(Some(3), q(1, 2), -1), w(Some(6), q(1, 1), -1)]
        );
        assert!(
            decide_laurent_integral(&HypergeomSpec::default())
                .unwrap()
                .decision
        );
    }

    #[test]
    fn q_route_is_flagged_for_negative_moduli() {
        let v = decide_q_integral(&spec(&[(-1, -1)], &[])).unwrap();
        assert!(v.route.is_some());
        assert!(decide_q_integral(&binom32()).unwrap().route.is_none());
    }

    #[test]
    fn negative_examples() {
        let h = spec(&[(1, 2)], &[]);
        assert_eq!(h.swap_reflect(), spec(&[], &[(-1, -2)]));
        let v = decide_negative_q_integral(&h).unwrap();
        let l = decide_laurent_integral(&h.swap_reflect()).unwrap();
        assert_eq!(v.decision, l.decision);
        assert_eq!(v.mode, Mode::Negative);
        assert!(matches!(
            decide_negative_q_integral(&first()),
            Err(Error::DegenerateParameter { .. })
        ));
    }

    #[test]
    fn bidirectional_examples() {
        assert!(
            decide_bidirectional(&spec(&[(1, 2)], &[(1, 2)]))
                .unwrap()
                .decision
        );
        let v = decide_bidirectional(&spec(&[(1, 1)], &[])).unwrap();
        assert!(!v.decision);
        assert_eq!(v.period_slopes, vec![(1, 1)]);
        let v = decide_bidirectional(&binom32()).unwrap();
        assert!(v.decision);
        assert!(v.period_slopes.iter().all(|&(_, s)| s == 0));
        assert!(!v.notes.is_empty());
    }

    #[test]
    fn classical_examples() {
        let v = decide_n_integral_classical(&[q(1, 3), q(2, 3)], &[q(1, 2), q(1, 1)]).unwrap();
        assert!(v.decision);
        let v =
            decide_n_integral_classical(&[q(1, 9), q(4, 9), q(5, 9)], &[q(1, 3), q(1, 1), q(1, 1)])
                .unwrap();
        assert!(v.decision);
        let v = decide_n_integral_classical(&[q(1, 2)], &[q(1, 3)]).unwrap();
        assert!(!v.decision);
        assert_eq!(v.witnesses[0], w(Some(1), q(1, 3), -1));
        assert!(matches!(
            decide_n_integral_classical(&[q(0, 1)], &[]),
            Err(Error::DegenerateParameter { .. })
        ));
    }

    #[test]
    fn factorial_examples() {
        assert!(
            decide_factorial_ratio(&[30, 1], &[15, 10, 6])
                .unwrap()
                .decision
        );
        assert!(decide_factorial_ratio(&[3], &[2, 1]).unwrap().decision);
        let v = decide_factorial_ratio(&[1, 1], &[2]).unwrap();
        assert!(!v.decision);
        assert_eq!(v.witnesses, vec![w(None, q(1, 2), -1)]);
        assert!(decide_factorial_ratio(&[0], &[]).is_err());
    }

    #[test]
    fn factorial_spec_expansion() {
        assert_eq!(
            factorial_ratio_spec(&[3], &[2, 1]),
            spec(&[(1, 3), (2, 3), (3, 3)], &[(1, 2), (2, 2), (1, 1)])
        );
    }

    #[test]
    fn lifted_witnesses_are_negative() {
        let h = first();
        let v = decide_q_integral(&h).unwrap();
        let l = lift_witness(&h, &v.witnesses[0]).unwrap();
        assert_eq!(l.b % 6, 3);
        assert!(l.valuation < 0);
        assert_eq!(
            crate::qvaluation::hyper_phi_valuation(l.b, &h, l.n).unwrap(),
            l.valuation
        );
    }

    #[test]
    fn mode_parsing_and_json() {
        assert_eq!(
            "bidirectional".parse::<Mode>().unwrap(),
            Mode::Bidirectional
        );
        assert!("other".parse::<Mode>().is_err());
        let v = decide_q_integral(&first()).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"decision":false,"mode":"q","witnesses":[{"b":3,"abscissa":"1/2","value":-1},{"b":6,"abscissa":"1/1","value":-1}],"slope":0}"#
        );
        let back: Verdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
