//! Exact invariants of virtual knots and classical links.
//!
//! - [`poly`]: Laurent polynomials over the integers and truncated Magnus series.
//! - [`gauss`]: Gauss diagrams, crossing indices, Alexander numberings and moves.
//! - [`seifert`]: Seifert matrices, Alexander polynomials and the AC bridge identity.
//! - [`milnor`]: Milnor's triple linking number and the index chain.
//! - [`braid`]: braid closures, Stallings homogenization and fiber stabilization.
//! - [`selftest`]: the randomized identity suites, built on [`random`].

pub mod braid;
pub mod gauss;
pub mod milnor;
pub mod poly;
pub mod random;
pub mod seifert;
pub mod selftest;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] poly::PolyError),
    #[error(transparent)]
    Gauss(#[from] gauss::GaussError),
    #[error(transparent)]
    Seifert(#[from] seifert::SeifertError),
    #[error(transparent)]
    Milnor(#[from] milnor::MilnorError),
    #[error(transparent)]
    Braid(#[from] braid::BraidError),
}

impl Error {
    /// Stable identifier of the error kind, e.g. `NotUnimodular`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Poly(e) => e.name(),
            Error::Gauss(e) => e.name(),
            Error::Seifert(e) => e.name(),
            Error::Milnor(e) => e.name(),
            Error::Braid(e) => e.name(),
        }
    }
}
