//! Step functions as jump tables: the Landau functions `Δ_b`, the classical
//! `Δ_{e,f}` and `ξ`, the Christol order, and the generalized `Ξ(b, ·)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{self, Rational};
use crate::error::{Error, Result};
use crate::qvaluation::{DeltaStep, HypergeomSpec, PochParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JumpOrder {
    Standard,
    Christol,
}

impl JumpOrder {
    pub fn cmp(self, x: &Rational, y: &Rational) -> Ordering {
        match self {
            JumpOrder::Standard => x.cmp(y),
            JumpOrder::Christol => christol_cmp(x, y),
        }
    }
}

/// `x ≺ y` iff `⟨x⟩ < ⟨y⟩`, or `⟨x⟩ = ⟨y⟩` and `x > y`.
pub fn christol_cmp(x: &Rational, y: &Rational) -> Ordering {
    x.angle().cmp(&y.angle()).then_with(|| y.cmp(x))
}

pub fn christol_leq(x: &Rational, y: &Rational) -> bool {
    christol_cmp(x, y) != Ordering::Greater
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Jump {
    pub abscissa: Rational,
    pub amplitude: i64,
}

/// A step function that is 0 before its first jump and changes by
/// `amplitude` at each abscissa, in the given order. Tables built from a
/// Landau function carry `period_slope = Δ_b(1)` and are evaluated outside
/// `[0, 1]` through `Δ_b(x + k) = Δ_b(x) + k·Δ_b(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpTable {
    pub order: JumpOrder,
    pub jumps: Vec<Jump>,
    pub period_slope: Option<i64>,
    pub raw_plus: Vec<Rational>,
    pub raw_minus: Vec<Rational>,
}

impl JumpTable {
    pub fn new(
        order: JumpOrder,
        mut raw_plus: Vec<Rational>,
        mut raw_minus: Vec<Rational>,
        period_slope: Option<i64>,
    ) -> Self {
        raw_plus.sort_by(|x, y| order.cmp(x, y));
        raw_minus.sort_by(|x, y| order.cmp(x, y));
        let mut all: Vec<(&Rational, i64)> = raw_plus
            .iter()
            .map(|x| (x, 1))
            .chain(raw_minus.iter().map(|x| (x, -1)))
            .collect();
        all.sort_by(|a, b| order.cmp(a.0, b.0));
        let mut jumps: Vec<Jump> = Vec::new();
        for (x, m) in all {
            match jumps.last_mut() {
                Some(j) if &j.abscissa == x => j.amplitude += m,
                _ => jumps.push(Jump {
                    abscissa: x.clone(),
                    amplitude: m,
                }),
            }
        }
        jumps.retain(|j| j.amplitude != 0);
        JumpTable {
            order,
            jumps,
            period_slope,
            raw_plus,
            raw_minus,
        }
    }

    fn prefix(&self, x: &Rational) -> i64 {
        let k = self
            .jumps
            .partition_point(|j| self.order.cmp(&j.abscissa, x) != Ordering::Greater);
        self.jumps[..k].iter().map(|j| j.amplitude).sum()
    }

    pub fn evaluate(&self, x: &Rational) -> i64 {
        match (self.order, self.period_slope) {
            (JumpOrder::Standard, Some(slope)) => {
                let k = x.floor_i64();
                self.prefix(&(x - k)) + k * slope
            }
            _ => self.prefix(x),
        }
    }

    /// The running sums after each jump, in order.
    pub fn prefix_sums(&self) -> Vec<i64> {
        self.jumps
            .iter()
            .scan(0, |acc, j| {
                *acc += j.amplitude;
                Some(*acc)
            })
            .collect()
    }

    /// The set of values taken: 0 and every prefix sum. For a Landau table
    /// this is `Δ_b([0, 1])`.
    pub fn values(&self) -> BTreeSet<i64> {
        std::iter::once(0).chain(self.prefix_sums()).collect()
    }

    /// The minimum value and the first abscissa reaching it; `None` when the
    /// minimum is only reached before the first jump.
    pub fn min(&self) -> (i64, Option<Rational>) {
        let mut best = (0, None);
        for (j, p) in self.jumps.iter().zip(self.prefix_sums()) {
            if p < best.0 || (p == best.0 && best.1.is_none()) {
                best = (p, Some(j.abscissa.clone()));
            }
        }
        best
    }

    /// The first abscissa where the function turns negative, with its value.
    pub fn first_negative(&self) -> Option<(Rational, i64)> {
        self.jumps
            .iter()
            .zip(self.prefix_sums())
            .find(|(_, p)| *p < 0)
            .map(|(j, p)| (j.abscissa.clone(), p))
    }

    pub fn total(&self) -> i64 {
        self.jumps.iter().map(|j| j.amplitude).sum()
    }
}

/// `Δ_{e,f}(x) = Σ ⌊e_i x⌋ − Σ ⌊f_j x⌋`.
pub fn classical_landau(e: &[u64], f: &[u64], x: &Rational) -> i64 {
    let s = |v: &[u64]| -> i64 { v.iter().map(|&k| (x * k as i64).floor_i64()).sum() };
    s(e) - s(f)
}

/// Lcm of the exact denominators.
pub fn denominator_lcm(params: &[Rational]) -> u64 {
    params.iter().fold(1, |acc, p| {
        arith::lcm(acc, p.denom().to_u64().expect("denominator fits in u64"))
    })
}

/// The jump table of `ξ_{𝛂,𝛃}(a, ·)`: `+1` at each `aα_i`, `−1` at each `aβ_j`,
/// in Christol order.
pub fn classical_xi_table(alpha: &[Rational], beta: &[Rational], a: u64) -> Result<JumpTable> {
    let d = denominator_lcm(&[alpha, beta].concat());
    if a.gcd(&d) != 1 {
        return Err(Error::InvalidMultiplier { a, d });
    }
    let scale = |v: &[Rational]| v.iter().map(|x| x * a as i64).collect();
    Ok(JumpTable::new(
        JumpOrder::Christol,
        scale(alpha),
        scale(beta),
        None,
    ))
}

/// `ξ_{𝛂,𝛃}(a, x) = #{i : aα_i ⪯ x} − #{j : aβ_j ⪯ x}`.
pub fn classical_xi(alpha: &[Rational], beta: &[Rational], a: u64, x: &Rational) -> Result<i64> {
    Ok(classical_xi_table(alpha, beta, a)?.evaluate(x))
}

/// The jump table of `Δ_b^{𝐫,𝐭}` on `(0, 1]` with its period slope.
pub fn delta_jump_table(b: u64, h: &HypergeomSpec) -> JumpTable {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut slope = 0;
    for p in &h.num {
        let st = DeltaStep::new(b, *p);
        plus.extend(st.jumps());
        slope += st.slope();
    }
    for p in &h.den {
        let st = DeltaStep::new(b, *p);
        minus.extend(st.jumps());
        slope -= st.slope();
    }
    JumpTable::new(JumpOrder::Standard, plus, minus, Some(slope))
}

/// For a pair at `b`: `Some((c, e))` with `c = gcd(r, s, b)` and `e` the least
/// positive solution of `b·e ≡ c (mod s)`, when `gcd(s, b) = c`; else `None`.
pub fn multiplier_witness(b: u64, p: PochParams) -> Option<(u64, u64)> {
    let c = arith::gcd(p.r, p.s).gcd(&b);
    if p.s.unsigned_abs().gcd(&b) != c {
        return None;
    }
    let m = p.s.unsigned_abs() / c;
    let e = arith::mod_inverse((b / c) as i64, m).expect("b/c is invertible mod s/c");
    Some((c, e))
}

/// The auxiliary data defining `Ξ(b, ·)` for `b ∈ {1, …, d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiContext {
    pub b: u64,
    pub d: u64,
    /// `c_i = gcd(r_i, s_i, b)`.
    pub c: Vec<u64>,
    /// `d_j = gcd(t_j, u_j, b)`.
    pub d_den: Vec<u64>,
    /// `V_b` and `W_b`, zero-based.
    pub v_set: Vec<usize>,
    pub w_set: Vec<usize>,
    /// `e_i` for `i ∈ V_b`, `None` otherwise; likewise `f_j`.
    pub e: Vec<Option<u64>>,
    pub f: Vec<Option<u64>>,
    pub b_tilde: u64,
    pub a: u64,
}

pub fn xi_context(b: u64, h: &HypergeomSpec) -> Result<XiContext> {
    let d = h.d();
    if b == 0 || b > d {
        return Err(Error::InvalidArgument(format!("b = {b} outside 1..={d}")));
    }
    let side = |v: &[PochParams]| {
        let c: Vec<u64> = v.iter().map(|p| arith::gcd(p.r, p.s).gcd(&b)).collect();
        let w: Vec<Option<u64>> = v
            .iter()
            .map(|p| multiplier_witness(b, *p).map(|(_, e)| e))
            .collect();
        let set: Vec<usize> = (0..v.len()).filter(|&i| w[i].is_some()).collect();
        (c, set, w)
    };
    let (c, v_set, e) = side(&h.num);
    let (d_den, w_set, f) = side(&h.den);
    let b_tilde = arith::coprime_part(b, d);
    let a = arith::mod_inverse(b_tilde as i64, d).expect("b̃ is coprime to d");
    Ok(XiContext {
        b,
        d,
        c,
        d_den,
        v_set,
        w_set,
        e,
        f,
        b_tilde,
        a,
    })
}

/// `(⟨eα⟩ + k)/c − ⌊1 − aα⌋`.
pub fn xi_abscissa(alpha: &Rational, c: u64, e: u64, a: u64, k: u64) -> Rational {
    ((alpha * e as i64).angle() + k as i64) / c as i64
        - Rational::from_integer((Rational::one() - alpha * a as i64).floor())
}

fn check_nondegenerate(h: &HypergeomSpec) -> Result<()> {
    match h.degenerate_pair() {
        Some(p) => Err(Error::DegenerateParameter { r: p.r, s: p.s }),
        None => Ok(()),
    }
}

/// The Christol-ordered jump table of `Ξ_{𝐫,𝐭}(b, ·)`.
pub fn xi_jump_table(b: u64, h: &HypergeomSpec) -> Result<JumpTable> {
    check_nondegenerate(h)?;
    let ctx = xi_context(b, h)?;
    Ok(xi_table_from(&ctx, h))
}

fn xi_table_from(ctx: &XiContext, h: &HypergeomSpec) -> JumpTable {
    let side = |v: &[PochParams], c: &[u64], e: &[Option<u64>]| {
        let mut out = Vec::new();
        for (i, p) in v.iter().enumerate() {
            if let Some(e) = e[i] {
                let alpha = p.alpha();
                for k in 0..c[i] {
                    out.push(xi_abscissa(&alpha, c[i], e, ctx.a, k));
                }
            }
        }
        out
    };
    JumpTable::new(
        JumpOrder::Christol,
        side(&h.num, &ctx.c, &ctx.e),
        side(&h.den, &ctx.d_den, &ctx.f),
        None,
    )
}

/// Minimum of `Ξ(b, ·)` over `ℝ` with an abscissa reaching it.
pub fn xi_min(b: u64, h: &HypergeomSpec) -> Result<(i64, Option<Rational>)> {
    Ok(xi_jump_table(b, h)?.min())
}

/// `𝔞 = max gcd(r, s)`.
pub fn frak_a(h: &HypergeomSpec) -> u64 {
    h.num
        .iter()
        .chain(&h.den)
        .map(|p| arith::gcd(p.r, p.s))
        .max()
        .unwrap_or(0)
}

/// `𝔫 = max 𝔫_α` over all parameters.
pub fn frak_n(h: &HypergeomSpec) -> u64 {
    h.alphas()
        .iter()
        .chain(h.betas().iter())
        .map(|x| x.frak_n().to_u64().expect("fits in u64"))
        .max()
        .unwrap_or(0)
}

/// `𝔟 = 𝔞·𝔫`: from here on the large-`b` form of `Δ_b` applies.
pub fn simplification_threshold(h: &HypergeomSpec) -> u64 {
    frak_a(h) * frak_n(h)
}

fn floor_one_minus_range(h: &HypergeomSpec) -> i64 {
    let fl: Vec<i64> = h
        .alphas()
        .iter()
        .chain(h.betas().iter())
        .map(|x| (Rational::one() - x).floor_i64())
        .collect();
    match (fl.iter().max(), fl.iter().min()) {
        (Some(hi), Some(lo)) => hi - lo,
        _ => 0,
    }
}

/// The largest `b` not covered by the jump-ordering comparison:
/// above it, every pair of jumps of `Δ_b` is ordered like its partner in
/// `Ξ(b mod d, ·)`.
pub fn ordering_threshold(h: &HypergeomSpec) -> u64 {
    let r = h
        .num
        .iter()
        .chain(&h.den)
        .map(|p| p.r.unsigned_abs())
        .max()
        .unwrap_or(0);
    r.max(h.d() * floor_one_minus_range(h) as u64)
}

/// From here on distinct jumps of `Δ_b` are at least `1/b` apart.
pub fn separation_threshold(h: &HypergeomSpec) -> u64 {
    2 * h.d() * (floor_one_minus_range(h) as u64 + 1)
}

/// A `b` past which `Δ_b([0,1]) = Ξ(b mod d, ℝ)` and sampling at `n/b`
/// sees every value.
pub fn large_b_threshold(h: &HypergeomSpec) -> u64 {
    (ordering_threshold(h) + 1)
        .max(simplification_threshold(h))
        .max(separation_threshold(h))
}

/// `Δ_b(x)` through the large-`b` form, `None` for `b < 𝔟`.
pub fn delta_simplified(b: u64, h: &HypergeomSpec, x: &Rational) -> Option<i64> {
    if b < simplification_threshold(h) || b == 0 {
        return None;
    }
    let term = |p: &PochParams| -> i64 {
        match multiplier_witness(b, *p) {
            None => 0,
            Some((c, e)) => {
                let alpha = p.alpha();
                let shift =
                    Rational::from_integer((Rational::one() - &alpha).floor()) / (b / c) as i64;
                (x * c as i64 - (&alpha * e as i64).angle_star() - shift).floor_i64() + 1
            }
        }
    };
    let num: i64 = h.num.iter().map(term).sum();
    let den: i64 = h.den.iter().map(term).sum();
    Some(num - den)
}

/// Representative of `b` in `{1, …, d}`.
pub fn residue(b: u64, d: u64) -> u64 {
    let r = b % d;
    if r == 0 {
        d
    } else {
        r
    }
}
