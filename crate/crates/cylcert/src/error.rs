//! Crate-wide error type and the hypothesis-violation taxonomy.

use crate::bounds::BoundReport;
use crate::scalar::{fmt_rat, Rat};
use thiserror::Error;

/// Everything that can go wrong, from parse errors to budget exhaustion.
///
/// The CLI maps variants onto its exit-code contract:
/// `Parse` -> 1, `Hypothesis`/`Registry`/`NotCertified`/`EmptySet` -> 2,
/// `Budget` -> 3; verification failures are reported, not raised.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("{0}")]
    Domain(String),

    #[error("semialgebraic set has no point on the sampling grid (is S empty?)")]
    EmptySet,

    #[error("cannot certify positivity: {0}")]
    NotCertified(String),

    #[error("hypothesis rejected: {0}")]
    Hypothesis(HypothesisViolation),

    #[error("registry: {0}")]
    Registry(String),

    #[error("infeasible budget: {detail}")]
    Budget {
        detail: String,
        report: Option<Box<BoundReport>>,
    },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("certificate file: {0}")]
    CertFormat(String),
}

/// Why an input fails the hypotheses of the cylinder representation.
#[derive(Debug, Clone)]
pub enum HypothesisViolation {
    /// `deg_y f` is odd, so `f` cannot be positive on `S x R`.
    OddYDegree { m: u32 },
    /// The leading coefficient of `f` in `y` is `<= 0` at a point of `S`:
    /// `f` is not fully m-ic there.
    NotFullyMic { witness: Vec<Rat>, value: Rat },
    /// The leading coefficient could not be certified positive on `S`
    /// at the finest budgeted grid.
    LeadingCoeffUncertified { detail: String },
    /// `f` itself (or its circle homogenization) could not be certified
    /// positive over `S x C`.
    PositivityUncertified { detail: String },
    /// Direct univariate route: `f` in `R[y]` is not strictly positive.
    UnivariateNotPositive { detail: String },
}

impl std::fmt::Display for HypothesisViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HypothesisViolation::OddYDegree { m } => {
                write!(f, "deg_y f = {m} is odd; f cannot be positive on S x R")
            }
            HypothesisViolation::NotFullyMic { witness, value } => {
                let pt = witness.iter().map(fmt_rat).collect::<Vec<_>>().join(", ");
                write!(
                    f,
                    "not fully m-ic: leading y-coefficient is {} at x = ({pt})",
                    fmt_rat(value)
                )
            }
            HypothesisViolation::LeadingCoeffUncertified { detail } => {
                write!(f, "leading y-coefficient not certified positive on S: {detail}")
            }
            HypothesisViolation::PositivityUncertified { detail } => {
                write!(f, "f not certified positive on S x C: {detail}")
            }
            HypothesisViolation::UnivariateNotPositive { detail } => {
                write!(f, "univariate f is not strictly positive on R: {detail}")
            }
        }
    }
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn arity(msg: impl Into<String>) -> Self {
        Error::Arity(msg.into())
    }
}
