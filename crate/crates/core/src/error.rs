use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{alpha} is not in the localization at b = {b} (gcd(d(alpha), b) != 1)")]
    NotInLocalization { b: u64, alpha: Rational },

    #[error("a = {a} does not satisfy a*b = 1 mod d(alpha) for b = {b}, alpha = {alpha}")]
    InvalidWitness { b: u64, alpha: Rational, a: i64 },

    #[error("b must be a positive integer")]
    ZeroIndex,

    #[error("(q^{r}; q^{s})_{n} is undefined")]
    UndefinedPochhammer { r: i64, s: i64, n: i64 },

    #[error("(q^{r}; q^{s})_{n} vanishes")]
    ZeroPochhammer { r: i64, s: i64, n: i64 },

    #[error("denominator factor (q^{r}; q^{s})_{n} vanishes")]
    ZeroDenominator { r: i64, s: i64, n: i64 },

    #[error("parameter {r}/{s} is a non-positive integer")]
    DegenerateParameter { r: i64, s: i64 },

    #[error("multiplier {a} is not coprime to {d}")]
    InvalidMultiplier { a: u64, d: u64 },

    #[error("polynomial is not a signed monomial times cyclotomic polynomials")]
    NotDecomposable,

    #[error("factorization has negative exponents and is not a Laurent polynomial")]
    NotPolynomial,

    #[error("zero modulus in pair ({r},{s})")]
    ZeroModulus { r: i64, s: i64 },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
