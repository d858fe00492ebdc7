use qcyclo::arith::Rational;
use qcyclo::oracle::{
    equivalence_sweep, hyper_factorization, hyper_factorization_by_division, random_corpus,
    SweepConfig,
};
use qcyclo::qvaluation::{hyper_phi_valuation, HypergeomSpec};
use qcyclo::steps::delta_jump_table;

#[test]
fn sweep_on_a_second_seed() {
    let cfg = SweepConfig {
        seed: 2024,
        specs: 60,
        ..SweepConfig::default()
    };
    let corpus = random_corpus(cfg.seed, cfg.specs, cfg.max_abs, cfg.max_len);
    let r = equivalence_sweep(&corpus, &cfg);
    assert!(r.passed(), "{r}");
    assert_eq!(r.specs, 60);
}

#[test]
fn sweep_reports_first_discrepancy_deterministically() {
    let cfg = SweepConfig {
        specs: 0,
        max_b: 6,
        min_n: 0,
        max_n: 4,
        ..SweepConfig::default()
    };
    let r = equivalence_sweep(&[], &cfg);
    assert!(r.passed());
    let a = equivalence_sweep(&random_corpus(3, 20, 12, 3), &cfg);
    let b = equivalence_sweep(&random_corpus(3, 20, 12, 3), &cfg);
    assert_eq!(a, b);
}

#[test]
fn delta_tables_match_oracle() {
    let specs = [
        HypergeomSpec::from_pairs(&[(1, 3), (2, 3), (3, 3)], &[(1, 2), (1, 1), (2, 2)]),
        HypergeomSpec::from_pairs(&[(2, 4)], &[]),
        HypergeomSpec::from_pairs(&[(1, 9), (4, 9), (5, 9)], &[(1, 3), (1, 1), (1, 1)]),
        HypergeomSpec::from_pairs(&[(-5, 6), (7, 4)], &[(1, 12)]),
    ];
    for h in &specs {
        for b in 1..=24u64 {
            let t = delta_jump_table(b, h);
            for n in 0..=40i64 {
                let x = Rational::new(n, b as i64);
                let want = hyper_factorization(h, n).unwrap().exponent(b);
                assert_eq!(t.evaluate(&x), want, "b={b}, n={n}");
                assert_eq!(hyper_phi_valuation(b, h, n).unwrap(), want);
            }
        }
    }
}

#[test]
fn first_example_has_a_negative_exponent_at_multiples_of_three() {
    let h = HypergeomSpec::from_pairs(&[(1, 3), (2, 3)], &[(1, 2), (1, 1)]);
    let hit = (0..=20).find_map(|n| {
        let f = hyper_factorization(&h, n).unwrap();
        f.factors
            .iter()
            .find(|&(&b, &v)| b % 3 == 0 && v < 0)
            .map(|(&b, &v)| (n, b, v))
    });
    let (n, b, v) = hit.expect("no negative exponent found");
    assert_eq!(hyper_phi_valuation(b, &h, n).unwrap(), v);
}

#[test]
fn division_route_agrees_on_small_terms() {
    for h in random_corpus(5, 40, 6, 2) {
        for n in -4..=6 {
            let direct = hyper_factorization(&h, n);
            let division = hyper_factorization_by_division(&h, n);
            match (direct, division) {
                (Ok(a), Ok(b)) => assert_eq!(a, b, "{h:?}, n={n}"),
                (Err(a), Err(b)) => assert_eq!(a, b),
                (a, b) => panic!("{h:?}, n={n}: {a:?} vs {b:?}"),
            }
        }
    }
}
