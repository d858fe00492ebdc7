//! Worked examples with their known outcomes.

use qcyclo::dwork::dwork_map;
use qcyclo::integrality::{decide_factorial_ratio, decide_n_integral_classical, decide_q_integral};
use qcyclo::oracle::{hyper_factorization, CycloFactorization};
use qcyclo::qvaluation::HypergeomSpec;
use qcyclo::steps::{classical_landau, xi_abscissa, xi_context, xi_jump_table};
use qcyclo::Rational;

use crate::ExampleOutcome;

type Check = fn() -> Result<String, String>;

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

fn ninths() -> HypergeomSpec {
    spec(&[(1, 9), (4, 9), (5, 9)], &[(1, 3), (1, 1), (1, 1)])
}

fn expect(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err(e: qcyclo::Error) -> String {
    e.to_string()
}

fn first_not_q_integral() -> Result<String, String> {
    let v = decide_q_integral(&first()).map_err(err)?;
    expect(!v.decision, "reported q-integral")?;
    let w = &v.witnesses[0];
    expect(
        w.b == Some(3) && w.abscissa == q(1, 2) && w.value == -1,
        format!("witness {w:?}"),
    )?;
    Ok("not q-integral, Ξ(3,1/2) = -1".into())
}

fn first_xi_data() -> Result<String, String> {
    let ctx = xi_context(3, &first()).map_err(err)?;
    expect(
        ctx.v_set.is_empty() && ctx.w_set == vec![0, 1] && ctx.f == vec![Some(1), Some(1)],
        format!("context {ctx:?}"),
    )?;
    let t = xi_jump_table(3, &first()).map_err(err)?;
    expect(
        t.raw_plus.is_empty() && t.raw_minus == vec![q(1, 2), q(1, 1)],
        "jump multisets",
    )?;
    Ok("V_3 empty, W_3 = {1,2}, J_3^- = {1/2, 1}".into())
}

fn first_classical() -> Result<String, String> {
    let v = decide_n_integral_classical(&first().alphas(), &first().betas()).map_err(err)?;
    expect(v.decision, "classical criterion fails")?;
    Ok("N-integral".into())
}

fn binomial_q_integral() -> Result<String, String> {
    let t = xi_jump_table(3, &binom32()).map_err(err)?;
    let seq: Vec<(Rational, i64)> = t
        .jumps
        .iter()
        .map(|j| (j.abscissa.clone(), j.amplitude))
        .collect();
    expect(
        seq == vec![(q(1, 3), 1), (q(1, 2), -1), (q(2, 3), 1), (q(1, 1), -1)],
        "jump order",
    )?;
    let v = decide_q_integral(&binom32()).map_err(err)?;
    expect(v.decision, "reported not q-integral")?;
    let mut phi3 = CycloFactorization::one();
    phi3.factors.insert(3, 1);
    let f = hyper_factorization(&binom32(), 1).map_err(err)?;
    expect(f == phi3, format!("n=1 factorization {f:?}"))?;
    Ok("1/3 ≺ 1/2 ≺ 2/3 ≺ 1 with +1,-1,+1,-1; q-integral".into())
}

fn factorial_landau() -> Result<String, String> {
    expect(classical_landau(&[3], &[2, 1], &q(1, 3)) == 1, "Δ(1/3)")?;
    expect(classical_landau(&[3], &[2, 1], &q(1, 2)) == 0, "Δ(1/2)")?;
    let v = decide_factorial_ratio(&[30, 1], &[15, 10, 6]).map_err(err)?;
    expect(v.decision, "(30,1)/(15,10,6) not q-integral")?;
    Ok("Δ_{(3),(2,1)} and (30n)!(n)!/((15n)!(10n)!(6n)!)".into())
}

fn ninths_not_q_integral() -> Result<String, String> {
    let v = decide_q_integral(&ninths()).map_err(err)?;
    expect(!v.decision, "reported q-integral")?;
    expect(
        v.witnesses
            .iter()
            .any(|w| w.b == Some(3) && w.abscissa == q(1, 1)),
        "no witness at b=3, x=1",
    )?;
    let c = decide_n_integral_classical(&ninths().alphas(), &ninths().betas()).map_err(err)?;
    expect(c.decision, "classical criterion fails")?;
    Ok("not q-integral at b=3, x=1; N-integral".into())
}

fn ninths_repaired() -> Result<String, String> {
    let h = spec(
        &[(1, 9), (4, 9), (5, 9), (9, 9)],
        &[(1, 3), (1, 1), (1, 1), (1, 1)],
    );
    let v = decide_q_integral(&h).map_err(err)?;
    expect(v.decision, "reported not q-integral")?;
    let t = xi_jump_table(9, &h).map_err(err)?;
    expect(
        t.raw_plus == (1..=9).map(|k| q(k, 9)).collect::<Vec<_>>(),
        "J_9^+",
    )?;
    expect(t.raw_minus == vec![q(1, 1); 3], "J_9^-")?;
    Ok("q-integral, J_9^+ = {1/9, ..., 1}".into())
}

fn ninths_third() -> Result<String, String> {
    let h = spec(&[(1, 9), (4, 9), (5, 9)], &[(3, 9), (9, 9), (9, 9)]);
    let v = decide_q_integral(&h).map_err(err)?;
    expect(!v.decision, "reported q-integral")?;
    let x = xi_jump_table(3, &h).map_err(err)?.evaluate(&q(1, 1));
    expect(x < 0, format!("Ξ(3,1) = {x}"))?;
    Ok(format!("not q-integral, Ξ(3,1) = {x}"))
}

fn collision() -> Result<String, String> {
    let h = spec(&[(1, 4), (3, 12)], &[]);
    let ctx = xi_context(9, &h).map_err(err)?;
    expect(
        ctx.c == vec![1, 3] && ctx.e == vec![Some(1), Some(3)] && ctx.a == 1,
        format!("context {ctx:?}"),
    )?;
    let g1 = xi_abscissa(&q(1, 4), 1, 1, 1, 0);
    let g2 = xi_abscissa(&q(1, 4), 3, 3, 1, 0);
    expect(g1 == q(1, 4) && g2 == q(1, 4), format!("{g1}, {g2}"))?;
    Ok("Γ_1 = Γ_2 = 1/4 at b = 9".into())
}

fn dwork_values() -> Result<String, String> {
    expect(dwork_map(3, &q(1, 2)).map_err(err)? == q(1, 2), "D_3(1/2)")?;
    expect(dwork_map(5, &q(1, 3)).map_err(err)? == q(2, 3), "D_5(1/3)")?;
    expect(dwork_map(1, &q(5, 7)).map_err(err)? == q(5, 7), "D_1(5/7)")?;
    Ok("D_3(1/2) = 1/2, D_5(1/3) = 2/3".into())
}

pub fn checks() -> Vec<(&'static str, Check)> {
    vec![
        ("dwork values", dwork_values),
        ("first example verdict", first_not_q_integral),
        ("first example Ξ(3, ·)", first_xi_data),
        ("first example classical limit", first_classical),
        ("q-binomial", binomial_q_integral),
        ("factorial ratios", factorial_landau),
        ("ninths", ninths_not_q_integral),
        ("ninths repaired", ninths_repaired),
        ("ninths third analog", ninths_third),
        ("jump collision", collision),
    ]
}

pub fn run_all() -> Vec<ExampleOutcome> {
    checks()
        .into_iter()
        .map(|(name, check)| {
            let (passed, detail) = match check() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            ExampleOutcome {
                name: name.into(),
                passed,
                detail,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_holds() {
        for r in run_all() {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = checks().into_iter().map(|(n, _)| n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), checks().len());
    }
}
