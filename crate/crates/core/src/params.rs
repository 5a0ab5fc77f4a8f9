use std::fmt;

use crate::error::{Error, Result};

/// Which closed-form family of approximants applies to a parameter pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// 0 < α < 1, β > α, β ≠ 1.
    GeneralSub,
    /// 0 < α < 1, β = 1.
    BetaOne,
    /// 0 < α = β < 1.
    Diagonal,
    /// α = 1, β > 1.
    AlphaOne,
    /// α = β = 1, where E is the exponential.
    PureExponential,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Regime::GeneralSub => "general",
            Regime::BetaOne => "beta-one",
            Regime::Diagonal => "diagonal",
            Regime::AlphaOne => "alpha-one",
            Regime::PureExponential => "exponential",
        };
        f.write_str(name)
    }
}

/// A validated `(α, β)` pair inside the complete-monotonicity region
/// `0 < α ≤ 1, β ≥ α`, tagged with its regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    alpha: f64,
    beta: f64,
    regime: Regime,
}

impl MLParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        classify(alpha, beta)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }
}

/// Validate `(α, β)` and assign its regime. Comparisons are exact.
pub fn classify(alpha: f64, beta: f64) -> Result<MLParams> {
    let valid =
        alpha.is_finite() && beta.is_finite() && alpha > 0.0 && alpha <= 1.0 && beta >= alpha;
    if !valid {
        return Err(Error::Parameters { alpha, beta });
    }
    let regime = if alpha == 1.0 {
        if beta == 1.0 {
            Regime::PureExponential
        } else {
            Regime::AlphaOne
        }
    } else if beta == alpha {
        Regime::Diagonal
    } else if beta == 1.0 {
        Regime::BetaOne
    } else {
        Regime::GeneralSub
    };
    Ok(MLParams {
        alpha,
        beta,
        regime,
    })
}
