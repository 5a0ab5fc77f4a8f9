use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Input outside the domain of an operation.
    Domain,
    /// Degeneracy, non-convergence or a failed numerical invariant.
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function has a pole at x = {0}")]
    Pole(f64),

    #[error("parameters alpha = {alpha}, beta = {beta} lie outside the region 0 < alpha <= 1, beta >= alpha")]
    Parameters { alpha: f64, beta: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms at x = {x}")]
    NonConvergence { x: f64, terms: usize },

    #[error("oracle refuses x = {x}: {reason}")]
    OracleRefused { x: f64, reason: &'static str },

    #[error("degenerate coefficient system: {0}")]
    Degenerate(String),

    #[error("approximant denominator 1 + {d1}*x + {d2}*x^2 vanishes on [0, inf)")]
    Construction { d1: f64, d2: f64 },

    #[error("inverse branch failure at y = {y}: {reason}")]
    Branch { y: f64, reason: String },

    #[error("bisection bracket failure at y = {y}: {reason}")]
    Bracket { y: f64, reason: &'static str },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("at grid point x = {x}: {source}")]
    AtPoint { x: f64, source: Box<Error> },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Pole(_) | Error::Parameters { .. } | Error::Domain(_) | Error::Config(_) => {
                ErrorKind::Domain
            }
            Error::AtPoint { source, .. } => source.kind(),
            _ => ErrorKind::Numerical,
        }
    }

    pub(crate) fn at(self, x: f64) -> Error {
        Error::AtPoint {
            x,
            source: Box::new(self),
        }
    }
}
