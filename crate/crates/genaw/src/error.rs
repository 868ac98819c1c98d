//! Error type shared by every module of the crate.

use std::fmt;

use thiserror::Error;

/// Which admissibility invariant of a parameter tuple was violated.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamViolation {
    /// A parameter is NaN or infinite.
    NonFinite { name: &'static str },
    /// A pairwise product such as `ab` equals `q^{-m}`, which zeroes a recurrence denominator.
    PairwiseProductPole { pair: &'static str, m: u32 },
    /// The multiset `{a, b, c, d}` is not closed under complex conjugation.
    NotConjugateClosed { name: &'static str },
    /// `max(|a|, |b|, |c|, |d|) < 1` fails.
    Magnitude { name: &'static str, modulus: f64 },
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamViolation::NonFinite { name } => {
                write!(f, "finiteness: parameter {name} is not a finite number")
            }
            ParamViolation::PairwiseProductPole { pair, m } => write!(
                f,
                "pairwise product {pair} must not equal q^-m: {pair} = q^-{m}"
            ),
            ParamViolation::NotConjugateClosed { name } => write!(
                f,
                "conjugate closure: {{a,b,c,d}} must be real or complex-conjugate pairs, \
                 parameter {name} has no conjugate partner"
            ),
            ParamViolation::Magnitude { name, modulus } => write!(
                f,
                "magnitude: max(|a|,|b|,|c|,|d|) < 1 required, |{name}| = {modulus}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid base q = {0}: 0 < q < 1 required")]
    InvalidBase(f64),
    #[error("invalid parameters, violated invariant {0}")]
    InvalidParams(ParamViolation),
    #[error("invalid masses: {0}")]
    InvalidMasses(String),
    #[error("infinite product did not converge: {0}")]
    NonConvergent(String),
    #[error("series does not terminate within {max_terms} terms")]
    NotTerminating { max_terms: usize },
    #[error("series denominator vanished at term {k}")]
    DenominatorVanished { k: usize },
    #[error("singular denominator: {0}")]
    SingularDenominator(String),
    #[error("lattice point with q^s = 0")]
    ZeroArgument,
    #[error("x = {0} lies outside [-1, 1]")]
    OutOfInterval(f64),
    #[error("degenerate lattice point: {0}")]
    DegenerateLatticePoint(String),
    #[error("confluent points: |x1 - x2| = {0:e} is below the quotient-form guard")]
    ConfluentPoints(f64),
    #[error("kappa determinant at degree {n} is singular: {value:e}")]
    SingularKappa { n: usize, value: f64 },
    #[error("q^kappa(s) is degenerate: {0}")]
    DegenerateKappaS(String),
    #[error("degree {n} exceeds the cached maximum {limit}")]
    DegreeOutOfRange { n: usize, limit: usize },
    #[error("quadrature did not converge after {0} doublings")]
    NoConvergence(usize),
    #[error("Hankel system is ill-conditioned: relative residual {0:e}")]
    IllConditioned(f64),
}

impl Error {
    /// Errors caused by the caller's input rather than by the numerics.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidBase(_)
                | Error::InvalidParams(_)
                | Error::InvalidMasses(_)
                | Error::SingularDenominator(_)
                | Error::ZeroArgument
                | Error::OutOfInterval(_)
                | Error::DegreeOutOfRange { .. }
                | Error::SingularKappa { .. }
                | Error::NotTerminating { .. }
        )
    }

    /// Errors signalling that an iterative or limiting process failed.
    pub fn is_non_convergence(&self) -> bool {
        matches!(
            self,
            Error::NonConvergent(_) | Error::NoConvergence(_) | Error::IllConditioned(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
