//! Randomized equivalence sweep: closed-form valuations against explicit
//! cyclotomic factorization.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cyclo::hyper_factorization;
use crate::qvaluation::{hyper_q_valuation, HyperSteps, HypergeomSpec, PochParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub specs: usize,
    /// Bound on `|r|` and `|s|`.
    pub max_abs: i64,
    /// Bound on the number of pairs on each side.
    pub max_len: usize,
    pub max_b: u64,
    pub min_n: i64,
    pub max_n: i64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 0x5eed,
            specs: 200,
            max_abs: 12,
            max_len: 3,
            max_b: 30,
            min_n: -20,
            max_n: 40,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub spec_index: usize,
    pub spec: HypergeomSpec,
    pub n: i64,
    /// `Some(b)` for a `φ_b` exponent, `None` for the `q` exponent or the
    /// domain check.
    pub b: Option<u64>,
    pub formula: String,
    pub oracle: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub specs: usize,
    pub terms: u64,
    pub undefined_terms: u64,
    pub comparisons: u64,
    pub first_discrepancy: Option<Discrepancy>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} specs, {} terms ({} outside the domain), {} comparisons",
            self.specs, self.terms, self.undefined_terms, self.comparisons
        )?;
        match &self.first_discrepancy {
            None => write!(f, "PASS"),
            Some(d) => write!(
                f,
                "FAIL spec #{} num={:?} den={:?} n={} b={:?}: formula {} vs oracle {}",
                d.spec_index,
                pairs(&d.spec.num),
                pairs(&d.spec.den),
                d.n,
                d.b,
                d.formula,
                d.oracle
            ),
        }
    }
}

fn pairs(v: &[PochParams]) -> Vec<(i64, i64)> {
    v.iter().map(|p| (p.r, p.s)).collect()
}

pub fn random_pair<R: Rng>(rng: &mut R, max_abs: i64) -> PochParams {
    let r = rng.gen_range(-max_abs..=max_abs);
    let mut s = rng.gen_range(1..=max_abs);
    if rng.gen_bool(0.5) {
        s = -s;
    }
    PochParams { r, s }
}

pub fn random_spec<R: Rng>(rng: &mut R, max_abs: i64, max_len: usize) -> HypergeomSpec {
    let v = rng.gen_range(0..=max_len);
    let w = rng.gen_range(0..=max_len);
    HypergeomSpec::new(
        (0..v).map(|_| random_pair(rng, max_abs)).collect(),
        (0..w).map(|_| random_pair(rng, max_abs)).collect(),
    )
}

pub fn random_corpus(seed: u64, count: usize, max_abs: i64, max_len: usize) -> Vec<HypergeomSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_spec(&mut rng, max_abs, max_len))
        .collect()
}

struct Partial {
    terms: u64,
    undefined: u64,
    comparisons: u64,
    first: Option<Discrepancy>,
}

fn sweep_one(index: usize, h: &HypergeomSpec, cfg: &SweepConfig) -> Partial {
    let steps: Vec<HyperSteps> = (1..=cfg.max_b).map(|b| HyperSteps::new(b, h)).collect();
    let mut out = Partial {
        terms: 0,
        undefined: 0,
        comparisons: 0,
        first: None,
    };
    let mismatch = |n, b, formula: String, oracle: String| Discrepancy {
        spec_index: index,
        spec: h.clone(),
        n,
        b,
        formula,
        oracle,
    };
    for n in cfg.min_n..=cfg.max_n {
        out.terms += 1;
        let fac = hyper_factorization(h, n);
        let qv = hyper_q_valuation(h, n);
        let fac = match (fac, qv) {
            (Err(e1), Err(e2)) => {
                out.undefined += 1;
                out.comparisons += 1;
                if e1 != e2 {
                    out.first = Some(mismatch(n, None, e2.to_string(), e1.to_string()));
                    return out;
                }
                continue;
            }
            (Ok(f), Ok(q)) => {
                out.comparisons += 1;
                if f.q_exp != q {
                    out.first = Some(mismatch(n, None, q.to_string(), f.q_exp.to_string()));
                    return out;
                }
                f
            }
            (f, q) => {
                out.first = Some(mismatch(
                    n,
                    None,
                    format!("{q:?}"),
                    format!("{:?}", f.map(|f| f.q_exp)),
                ));
                return out;
            }
        };
        for (i, st) in steps.iter().enumerate() {
            let b = i as u64 + 1;
            out.comparisons += 1;
            let (got, want) = (st.valuation(n), fac.exponent(b));
            if got != want {
                out.first = Some(mismatch(n, Some(b), got.to_string(), want.to_string()));
                return out;
            }
        }
        for (&b, &want) in fac.factors.range(cfg.max_b + 1..) {
            out.comparisons += 1;
            let got = HyperSteps::new(b, h).valuation(n);
            if got != want {
                out.first = Some(mismatch(n, Some(b), got.to_string(), want.to_string()));
                return out;
            }
        }
    }
    out
}

/// Runs the sweep over `specs` in parallel. The reported discrepancy is the
/// first in (spec, n, b) order regardless of scheduling.
pub fn equivalence_sweep(specs: &[HypergeomSpec], cfg: &SweepConfig) -> SweepReport {
    let parts: Vec<Partial> = specs
        .par_iter()
        .enumerate()
        .map(|(i, h)| sweep_one(i, h, cfg))
        .collect();
    let mut report = SweepReport {
        specs: specs.len(),
        ..SweepReport::default()
    };
    for p in parts {
        report.terms += p.terms;
        report.undefined_terms += p.undefined;
        report.comparisons += p.comparisons;
        if report.first_discrepancy.is_none() {
            report.first_discrepancy = p.first;
        }
    }
    report
}

/// The sweep on the seeded random corpus described by `cfg`.
pub fn run_sweep(cfg: &SweepConfig) -> SweepReport {
    let corpus = random_corpus(cfg.seed, cfg.specs, cfg.max_abs, cfg.max_len);
    equivalence_sweep(&corpus, cfg)
}
