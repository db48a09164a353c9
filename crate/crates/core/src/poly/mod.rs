//! Exact polynomial arithmetic.
//!
//! [`LaurentPoly`] covers integer Laurent polynomials in one or two variables
//! (the carriers of every Alexander-type polynomial in this crate), and
//! [`NoncommSeries`] holds truncated power series in noncommuting symbols for
//! Magnus expansions.

mod laurent;
mod ring;
mod series;

pub use laurent::{eq_up_to_units, specialize, LaurentPoly, LaurentPoly1, LaurentPoly2, Substitution, UnitNormalForm};
pub use ring::Ring;
pub use series::{magnus_expand, NoncommSeries};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot substitute 0 for t{var}: polynomial has negative powers of it")]
    NegativeExponentAtZero { var: usize },
    #[error("cannot substitute {value} for t{var}: negative powers would leave the integers")]
    NonUnitInverse { var: usize, value: i64 },
    #[error("word of length {len} exceeds truncation degree {degree}")]
    WordTooLong { len: usize, degree: usize },
    #[error("polynomial syntax error: {0}")]
    Syntax(String),
}

impl PolyError {
    pub fn name(&self) -> &'static str {
        match self {
            PolyError::NegativeExponentAtZero { .. } => "NegativeExponentAtZero",
            PolyError::NonUnitInverse { .. } => "NonUnitInverse",
            PolyError::WordTooLong { .. } => "WordTooLong",
            PolyError::Syntax(_) => "SyntaxError",
        }
    }
}
