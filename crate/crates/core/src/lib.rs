//! Exact cyclotomic valuations of q-Pochhammer symbols and q-hypergeometric
//! terms, Dwork maps, step functions, and finite q-integrality criteria.

pub mod arith;
pub mod dwork;
pub mod error;
pub mod integrality;
pub mod oracle;
pub mod parse;
pub mod qvaluation;
pub mod steps;

pub use arith::Rational;
pub use error::{Error, Result};
