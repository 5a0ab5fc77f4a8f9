//! Rational solutions of two Riemann-Liouville fractional ODEs.
//!
//! Relaxation: `D^α f + λ f = 0` with `[D^{-α} f]_{t=0} = C1`, solved by
//! `f(t) = C1 t^{-α} E_{α,α}(-λ t^α)`.
//!
//! Two-term: `D^α g + D^β g = δ(t)` with `0 < α < β < 1`, solved by
//! `g(t) = (C2 + 1) t^{β-1} E_{β-α,β}(-t^{β-α})`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pade::{build_approx, snap_to_pole, PadeCoeffs};
use crate::params::{classify, MLParams};
use crate::reference::{ml_oracle, OracleConfig};
use crate::special::{gamma, rgamma};

/// Power of `t` in front of the relaxation solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Prefactor {
    /// `t^{-α}`
    #[default]
    Paper,
    /// `t^{α-1}`
    Standard,
}

impl fmt::Display for Prefactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prefactor::Paper => "paper",
            Prefactor::Standard => "standard",
        })
    }
}

impl FromStr for Prefactor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Prefactor::Paper),
            "standard" => Ok(Prefactor::Standard),
            other => Err(Error::Config(format!(
                "unknown prefactor '{other}' (expected paper or standard)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationSpec {
    alpha: f64,
    lambda: f64,
    c1: f64,
    prefactor: Prefactor,
}

impl RelaxationSpec {
    pub fn new(alpha: f64, lambda: f64, c1: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Parameters { alpha, beta: alpha });
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Domain(format!(
                "lambda = {lambda} must be positive and finite"
            )));
        }
        if !c1.is_finite() {
            return Err(Error::Domain(format!("C1 = {c1} must be finite")));
        }
        Ok(RelaxationSpec {
            alpha,
            lambda,
            c1,
            prefactor: Prefactor::Paper,
        })
    }

    pub fn with_prefactor(mut self, prefactor: Prefactor) -> Self {
        self.prefactor = prefactor;
        self
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn prefactor(&self) -> Prefactor {
        self.prefactor
    }

    /// The `(α, α)` Mittag-Leffler parameters behind the solution.
    pub fn ml_params(&self) -> MLParams {
        classify(self.alpha, self.alpha).expect("alpha validated in new")
    }

    fn power(&self, t: f64) -> f64 {
        match self.prefactor {
            Prefactor::Paper => t.powf(-self.alpha),
            Prefactor::Standard => t.powf(self.alpha - 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoTermSpec {
    alpha: f64,
    beta: f64,
    c2: f64,
}

impl TwoTermSpec {
    pub fn new(alpha: f64, beta: f64, c2: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < beta && beta < 1.0) {
            return Err(Error::Parameters { alpha, beta });
        }
        if !c2.is_finite() {
            return Err(Error::Domain(format!("C2 = {c2} must be finite")));
        }
        Ok(TwoTermSpec { alpha, beta, c2 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// The `(β-α, β)` Mittag-Leffler parameters behind the solution.
    pub fn ml_params(&self) -> MLParams {
        classify(self.beta - self.alpha, self.beta).expect("0 < beta - alpha < beta < 1")
    }
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "t = {t} must be positive and finite"
        )))
    }
}

pub fn relaxation_exact(spec: &RelaxationSpec, t: f64, cfg: &OracleConfig) -> Result<f64> {
    check_time(t)?;
    if spec.c1 == 0.0 {
        return Ok(0.0);
    }
    let e = ml_oracle(&spec.ml_params(), spec.lambda * t.powf(spec.alpha), cfg)?;
    Ok(spec.c1 * spec.power(t) * e)
}

/// `C1 / (Γ(α) t^α + 2λΓ(1-α)²/(αΓ(1-2α)) t^{2α} + λ²Γ(1-α)/α t^{3α})`,
/// times `t^{2α-1}` for the standard prefactor.
pub fn relaxation_pade(spec: &RelaxationSpec, t: f64) -> Result<f64> {
    check_time(t)?;
    // rejects α where the underlying approximant has a pole on the axis
    build_approx(&spec.ml_params())?;
    let a = spec.alpha;
    let l = spec.lambda;
    let g1m = gamma(1.0 - a)?;
    let k1 = 2.0 * l * g1m * g1m * rgamma(snap_to_pole(1.0 - 2.0 * a)) / a;
    let k2 = l * l * g1m / a;
    let ta = t.powf(a);
    let den = gamma(a)? * ta + k1 * ta * ta + k2 * ta * ta * ta;
    let value = spec.c1 / den;
    Ok(match spec.prefactor {
        Prefactor::Paper => value,
        Prefactor::Standard => value * t.powf(2.0 * a - 1.0),
    })
}

pub fn two_term_exact(spec: &TwoTermSpec, t: f64, cfg: &OracleConfig) -> Result<f64> {
    check_time(t)?;
    let scale = spec.c2 + 1.0;
    if scale == 0.0 {
        return Ok(0.0);
    }
    let d = spec.beta - spec.alpha;
    let e = ml_oracle(&spec.ml_params(), t.powf(d), cfg)?;
    Ok(scale * t.powf(spec.beta - 1.0) * e)
}

/// `q0'` and `q1'` of the two-term approximation (`p0`, `p1` are unused
/// and left at zero).
pub fn two_term_coeffs(spec: &TwoTermSpec) -> Result<PadeCoeffs> {
    let (a, b) = (spec.alpha, spec.beta);
    let g_a = gamma(a)?;
    let g_b = gamma(b)?;
    let g_2ba = gamma(2.0 * b - a)?;
    let r = rgamma(snap_to_pole(2.0 * a - b));
    let den = g_a * g_2ba - g_b * g_b;
    if den.is_nan() || den.abs() < 1e-14 * g_b * g_b {
        return Err(Error::Degenerate(format!("Γ(α)Γ(2β-α) - Γ(β)² = {den:e}")));
    }
    let q0 = (g_b * g_b * g_2ba / g_a - g_a * g_b * g_2ba * r) / den;
    let q1 = (g_b * g_2ba - g_a * g_b * g_b * r) / den;
    if q0 == 0.0 || !q0.is_finite() || !q1.is_finite() {
        return Err(Error::Degenerate(format!("q0' = {q0}, q1' = {q1}")));
    }
    Ok(PadeCoeffs {
        p0: 0.0,
        p1: 0.0,
        q0,
        q1,
    })
}

/// The rational two-term solution built from `q0'`, `q1'`.
pub fn two_term_pade(spec: &TwoTermSpec, t: f64) -> Result<f64> {
    check_time(t)?;
    build_approx(&spec.ml_params())?;
    let c = two_term_coeffs(spec)?;
    let (a, b) = (spec.alpha, spec.beta);
    let scale = spec.c2 + 1.0;
    let s = t.powf(b - a);
    let num = scale * rgamma(b) * t.powf(b - 1.0)
        + scale / (gamma(a)? * c.q0) * t.powf(2.0 * b - 1.0 - a);
    let den = 1.0 + c.q1 / c.q0 * s + s * s / c.q0;
    Ok(num / den)
}

/// Either of the two problems, for code that handles both uniformly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OdeSpec {
    Relaxation(RelaxationSpec),
    TwoTerm(TwoTermSpec),
}

impl OdeSpec {
    pub fn exact(&self, t: f64, cfg: &OracleConfig) -> Result<f64> {
        match self {
            OdeSpec::Relaxation(s) => relaxation_exact(s, t, cfg),
            OdeSpec::TwoTerm(s) => two_term_exact(s, t, cfg),
        }
    }

    pub fn pade(&self, t: f64) -> Result<f64> {
        match self {
            OdeSpec::Relaxation(s) => relaxation_pade(s, t),
            OdeSpec::TwoTerm(s) => two_term_pade(s, t),
        }
    }

    pub fn ml_params(&self) -> MLParams {
        match self {
            OdeSpec::Relaxation(s) => s.ml_params(),
            OdeSpec::TwoTerm(s) => s.ml_params(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::{coeffs_from_closed_form, eval_approx};
    use crate::special::{erfcx, SQRT_PI};

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn spec_validation() {
        assert!(RelaxationSpec::new(1.0, 1.0, 1.0).is_err());
        assert!(RelaxationSpec::new(0.5, 0.0, 1.0).is_err());
        assert!(TwoTermSpec::new(0.5, 0.5, 0.0).is_err());
        assert!(TwoTermSpec::new(0.5, 1.0, 0.0).is_err());
        assert!(TwoTermSpec::new(0.25, 0.75, 0.0).is_ok());
        assert_eq!(
            "standard".parse::<Prefactor>().unwrap(),
            Prefactor::Standard
        );
        assert!("other".parse::<Prefactor>().is_err());
    }

    #[test]
    fn relaxation_at_one() {
        let s = RelaxationSpec::new(0.5, 1.0, 1.0).unwrap();
        let want = 1.0 / SQRT_PI - erfcx(1.0).unwrap();
        assert!(rel(relaxation_exact(&s, 1.0, &cfg()).unwrap(), want) < 1e-13);
        let s0 = RelaxationSpec::new(0.5, 1.0, 0.0).unwrap();
        assert_eq!(relaxation_exact(&s0, 3.0, &cfg()).unwrap(), 0.0);
        assert_eq!(relaxation_pade(&s0, 3.0).unwrap(), 0.0);
        assert!(relaxation_exact(&s, 0.0, &cfg()).is_err());
        assert!(relaxation_pade(&s, -1.0).is_err());
    }

    #[test]
    fn relaxation_half_reduces() {
        let s = RelaxationSpec::new(0.5, 1.0, 1.0).unwrap();
        for t in [0.01f64, 0.3, 1.0, 7.0, 100.0] {
            let want = 1.0 / (SQRT_PI * t.sqrt() + 2.0 * SQRT_PI * t.powf(1.5));
            assert!(rel(relaxation_pade(&s, t).unwrap(), want) < 1e-13);
        }
    }

    #[test]
    fn relaxation_matches_diagonal_approximant() {
        for (a, l, c1) in [
            (0.5, 1.0, 1.0),
            (0.3, 2.5, -0.7),
            (0.6, 0.1, 3.0),
            (0.15, 10.0, 1.0),
        ] {
            let s = RelaxationSpec::new(a, l, c1).unwrap();
            let ap = build_approx(&classify(a, a).unwrap()).unwrap();
            for t in [0.1f64, 1.0, 10.0] {
                let want = c1 * t.powf(-a) * eval_approx(&ap, l * t.powf(a));
                assert!(
                    rel(relaxation_pade(&s, t).unwrap(), want) < 1e-12,
                    "({a}, {l}) t = {t}"
                );
                let st = s.with_prefactor(Prefactor::Standard);
                let want = c1 * t.powf(a - 1.0) * eval_approx(&ap, l * t.powf(a));
                assert!(rel(relaxation_pade(&st, t).unwrap(), want) < 1e-12);
            }
        }
    }

    #[test]
    fn prefactors_agree_at_one_half() {
        let s = RelaxationSpec::new(0.5, 2.0, 1.5).unwrap();
        let st = s.with_prefactor(Prefactor::Standard);
        for t in [0.2, 5.0] {
            assert!(
                rel(
                    relaxation_exact(&s, t, &cfg()).unwrap(),
                    relaxation_exact(&st, t, &cfg()).unwrap()
                ) < 1e-15
            );
        }
    }

    #[test]
    fn two_term_example() {
        let s = TwoTermSpec::new(0.25, 0.75, 0.0).unwrap();
        // E_{1/2,3/4}(-1), mpmath at 40 digits
        assert!(
            rel(
                two_term_exact(&s, 1.0, &cfg()).unwrap(),
                0.293_870_159_963_636_2
            ) < 1e-13
        );
        let s = TwoTermSpec::new(0.25, 0.75, -1.0).unwrap();
        assert_eq!(two_term_exact(&s, 2.0, &cfg()).unwrap(), 0.0);
        assert_eq!(two_term_pade(&s, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn two_term_coefficients_are_substituted_closed_form() {
        for (a, b) in [
            (0.25, 0.75),
            (0.1, 0.9),
            (0.4, 0.6),
            (0.3, 0.95),
            (0.05, 0.2),
        ] {
            let s = TwoTermSpec::new(a, b, 0.0).unwrap();
            let c = two_term_coeffs(&s).unwrap();
            let want = coeffs_from_closed_form(&classify(b - a, b).unwrap()).unwrap();
            assert!(
                rel(c.q0, want.q0) < 1e-12 && rel(c.q1, want.q1) < 1e-12,
                "({a}, {b})"
            );
        }
    }

    #[test]
    fn two_term_matches_general_approximant() {
        for (a, b, c2) in [(0.25, 0.75, 0.0), (0.1, 0.9, 2.0), (0.4, 0.6, -0.5)] {
            let s = TwoTermSpec::new(a, b, c2).unwrap();
            let ap = build_approx(&s.ml_params()).unwrap();
            for t in [0.01f64, 0.5, 3.0, 100.0] {
                let want = (c2 + 1.0) * t.powf(b - 1.0) * eval_approx(&ap, t.powf(b - a));
                assert!(
                    rel(two_term_pade(&s, t).unwrap(), want) < 1e-12,
                    "({a}, {b}) t = {t}"
                );
            }
        }
    }
}
