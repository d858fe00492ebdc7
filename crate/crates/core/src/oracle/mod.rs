//! Brute-force verification by explicit expansion and cyclotomic factorization.

pub mod cyclo;
pub mod laurent;
pub mod sweep;

pub use cyclo::{
    cyclotomic_poly, factor_cyclotomic, factor_cyclotomic_auto, factor_one_minus_q_pow,
    gaussian_binomial, hyper_factorization, hyper_factorization_by_division, poch_poly,
    CycloFactorization,
};
pub use laurent::LaurentPoly;
pub use sweep::{equivalence_sweep, random_corpus, run_sweep, SweepConfig, SweepReport};
