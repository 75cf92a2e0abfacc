use thiserror::Error;

use crate::expr::{EvalError, ParseError};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to parse {field}: {source}")]
    Parse {
        field: String,
        #[source]
        source: ParseError,
    },

    #[error("{context}: {source}")]
    Eval {
        context: String,
        #[source]
        source: EvalError,
    },

    #[error("invalid problem file: {0}")]
    ProblemFile(String),

    #[error("problem violates the solvability hypotheses: {0}")]
    Validation(String),

    #[error("degenerate coefficients: a = b = {0} makes (a+b)/(a-b) undefined")]
    DegenerateCoefficients(f64),

    #[error(
        "quadrature did not reach the requested accuracy: estimate {achieved:e} > {tolerance:e}"
    )]
    Accuracy { achieved: f64, tolerance: f64 },

    #[error("kernel evaluated with non-positive time separation {0}")]
    Causality(f64),

    #[error("{what} = {value} lies outside [0, 1]")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("point ({x}, {y}) lies outside the {domain}")]
    OutsideDomain {
        x: f64,
        y: f64,
        domain: &'static str,
    },

    #[error("y = {y} is below the reliable series height y_min = {y_min}; use the image-kernel mode or a larger y")]
    Reliability { y: f64, y_min: f64 },

    #[error(
        "{requested} sine coefficients requested but the interface grid resolves at most {limit}"
    )]
    Unresolvable { requested: usize, limit: usize },

    #[error("tridiagonal system is singular at row {0}")]
    SingularSystem(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("at grid point ({x}, {y}): {source}")]
    AtPoint {
        x: f64,
        y: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn eval(context: impl Into<String>, source: EvalError) -> Self {
        Error::Eval {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn at(self, x: f64, y: f64) -> Self {
        match self {
            e @ Error::AtPoint { .. } => e,
            e => Error::AtPoint {
                x,
                y,
                source: Box::new(e),
            },
        }
    }

    /// True for failures of numerical accuracy or evaluation, as opposed to
    /// bad input.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::AtPoint { source, .. } => source.is_numerical(),
            Error::Eval { .. }
            | Error::Accuracy { .. }
            | Error::Causality(_)
            | Error::OutOfRange { .. }
            | Error::OutsideDomain { .. }
            | Error::Reliability { .. }
            | Error::Unresolvable { .. }
            | Error::SingularSystem(_) => true,
            _ => false,
        }
    }
}
