//! Reference evaluator for `E_{α,β}(-x)`, `x ≥ 0`.
//!
//! Strategy, by the scaled argument `X = x^{1/α}` (the peak Taylor term grows
//! roughly like `e^X` and the smallest asymptotic term decays like `e^{-X}`):
//!
//! * closed forms for (½,1), (½,³⁄₂), (½,½), (1,2) and (1,1);
//! * `X ≤ taylor_cutoff`: Taylor series in f64 with compensated summation;
//! * `X ≥ asym_cutoff`: asymptotic series with optimal truncation;
//! * in between: Taylor series with double-word terms and accumulation.

use std::f64::consts::PI;

use crate::double_word::{self, DoubleWord};
use crate::error::{Error, Result};
use crate::params::MLParams;
use crate::special::{self, ln_gamma, rgamma, sin_pi, FRAC_1_SQRT_PI};

/// Smallest α for which the double-word Taylor sum is attempted.
pub const MIN_GAP_ALPHA: f64 = 0.1;
/// Term cap multiplier for the double-word Taylor sum.
const GAP_TERM_FACTOR: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    taylor_cutoff: f64,
    asym_cutoff: f64,
    max_terms: usize,
    term_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            taylor_cutoff: 5.0,
            asym_cutoff: 30.0,
            max_terms: 400,
            term_tol: 1e-17,
        }
    }
}

impl OracleConfig {
    /// Cutoffs are expressed in the scaled argument `x^{1/α}`.
    pub fn new(
        taylor_cutoff: f64,
        asym_cutoff: f64,
        max_terms: usize,
        term_tol: f64,
    ) -> Result<Self> {
        if !(taylor_cutoff > 0.0 && taylor_cutoff <= asym_cutoff && asym_cutoff.is_finite()) {
            return Err(Error::Config(format!(
                "need 0 < taylor_cutoff <= asym_cutoff, got {taylor_cutoff} and {asym_cutoff}"
            )));
        }
        if max_terms < 10 {
            return Err(Error::Config(format!(
                "max_terms must be at least 10, got {max_terms}"
            )));
        }
        if !(term_tol > 0.0 && term_tol <= 1e-6) {
            return Err(Error::Config(format!(
                "term_tol must lie in (0, 1e-6], got {term_tol}"
            )));
        }
        Ok(OracleConfig {
            taylor_cutoff,
            asym_cutoff,
            max_terms,
            term_tol,
        })
    }

    pub fn taylor_cutoff(&self) -> f64 {
        self.taylor_cutoff
    }

    pub fn asym_cutoff(&self) -> f64 {
        self.asym_cutoff
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn term_tol(&self) -> f64 {
        self.term_tol
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `x^{1/α}`, the variable that governs series behaviour.
pub fn scaled_argument(params: &MLParams, x: f64) -> f64 {
    let alpha = params.alpha();
    if alpha == 1.0 {
        x
    } else {
        x.powf(1.0 / alpha)
    }
}

fn check_argument(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "argument must be finite and nonnegative, got {x}"
        )))
    }
}

/// Taylor sum `Σ (-x)^k / Γ(αk + β)` in f64 with compensated accumulation.
pub fn ml_taylor(params: &MLParams, x: f64, cfg: &OracleConfig) -> Result<f64> {
    check_argument(x)?;
    if scaled_argument(params, x) > cfg.taylor_cutoff {
        return Err(Error::Domain(format!(
            "x = {x} is beyond the Taylor cutoff {} in x^(1/alpha)",
            cfg.taylor_cutoff
        )));
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    let ln_x = x.ln();
    let mut sum = CompensatedSum::default();
    let mut power = 1.0;
    let mut prev = f64::INFINITY;
    let mut mag = f64::INFINITY;
    for k in 0..cfg.max_terms {
        let arg = alpha * k as f64 + beta;
        mag = if arg < 170.0 {
            power * rgamma(arg)
        } else {
            (k as f64 * ln_x - ln_gamma(arg)).exp()
        };
        sum.add(if k % 2 == 0 { mag } else { -mag });
        if mag == 0.0 || mag < cfg.term_tol * sum.value().abs() {
            return Ok(sum.value());
        }
        prev = mag;
        power *= x;
    }
    if mag >= prev {
        return Err(Error::NonConvergence {
            x,
            terms: cfg.max_terms,
        });
    }
    Ok(sum.value())
}

/// Taylor sum with every term and the running sum in double-word precision.
fn taylor_double_word(params: &MLParams, x: f64, max_terms: usize, term_tol: f64) -> Result<f64> {
    let (alpha, beta) = (params.alpha(), params.beta());
    let ln_x = DoubleWord::from_f64(x).ln();
    let mut sum = DoubleWord::ZERO;
    let mut prev = f64::INFINITY;
    let mut mag = f64::INFINITY;
    for k in 0..max_terms {
        let kf = k as f64;
        let arg = DoubleWord::from_product(alpha, kf).add_f64(beta);
        let term = (ln_x.mul_f64(kf) - double_word::ln_gamma(arg)).exp();
        sum = if k % 2 == 0 { sum + term } else { sum - term };
        mag = term.hi;
        if mag < prev && mag < term_tol * sum.hi.abs() {
            return Ok(sum.to_f64());
        }
        prev = mag;
    }
    if mag >= prev {
        return Err(Error::NonConvergence {
            x,
            terms: max_terms,
        });
    }
    Ok(sum.to_f64())
}

/// Asymptotic sum `-Σ_{k=1}^{n} (-x)^{-k} / Γ(β - αk)`.
///
/// Truncated early at the minimum of the term envelope
/// `x^{-k} Γ(1 + αk - β) / π`, which bounds `|term_k|` and, unlike the
/// terms themselves, does not dip to zero at poles of Γ.
pub fn ml_asymptotic(params: &MLParams, x: f64, n_terms: usize) -> f64 {
    let (alpha, beta) = (params.alpha(), params.beta());
    let ln_x = x.ln();
    let mut sum = CompensatedSum::default();
    let mut inv_power = 1.0;
    let mut prev_envelope = f64::INFINITY;
    for k in 1..=n_terms {
        let kf = k as f64;
        inv_power /= x;
        let shifted = alpha * kf - beta;
        if shifted >= 1.0 {
            let envelope = -kf * ln_x + ln_gamma(1.0 + shifted);
            if envelope > prev_envelope {
                break;
            }
            prev_envelope = envelope;
        }
        let arg = beta - alpha * kf;
        let value = if arg > -160.0 {
            if inv_power == 0.0 {
                break;
            }
            inv_power * rgamma(arg)
        } else {
            // 1/Γ(arg) = sin(π arg) Γ(1 - arg) / π, in log space
            sin_pi(arg) * (ln_gamma(1.0 - arg) - kf * ln_x - PI.ln()).exp()
        };
        // -(-1)^k
        sum.add(if k % 2 == 1 { value } else { -value });
    }
    sum.value()
}

/// Exact value when `(α, β)` has an elementary closed form.
pub fn ml_closed_form(params: &MLParams, x: f64) -> Option<f64> {
    if x.is_nan() || x < 0.0 {
        return None;
    }
    let (alpha, beta) = (params.alpha(), params.beta());
    if x == 0.0
        && matches!(
            (alpha, beta),
            (0.5, 1.0) | (0.5, 1.5) | (0.5, 0.5) | (1.0, 2.0) | (1.0, 1.0)
        )
    {
        return Some(rgamma(beta));
    }
    match (alpha, beta) {
        (0.5, 1.0) => special::erfcx(x).ok(),
        (0.5, 1.5) => special::one_minus_erfcx_over_x(x).ok(),
        (0.5, 0.5) => special::erfcx(x).ok().map(|v| FRAC_1_SQRT_PI - x * v),
        (1.0, 2.0) => Some(-(-x).exp_m1() / x),
        (1.0, 1.0) => Some((-x).exp()),
        _ => None,
    }
}

/// Ground-truth `E_{α,β}(-x)`: absolute error ≤ 1e-10 below the asymptotic
/// cutoff, relative 1e-6 beyond.
pub fn ml_oracle(params: &MLParams, x: f64, cfg: &OracleConfig) -> Result<f64> {
    check_argument(x)?;
    if x == 0.0 {
        return Ok(rgamma(params.beta()));
    }
    if let Some(v) = ml_closed_form(params, x) {
        return Ok(v);
    }
    let scaled = scaled_argument(params, x);
    if scaled <= cfg.taylor_cutoff {
        ml_taylor(params, x, cfg)
    } else if scaled >= cfg.asym_cutoff {
        Ok(ml_asymptotic(params, x, cfg.max_terms))
    } else if params.alpha() < MIN_GAP_ALPHA {
        Err(Error::OracleRefused {
            x,
            reason: "mid-range evaluation needs alpha >= 0.1",
        })
    } else {
        taylor_double_word(params, x, GAP_TERM_FACTOR * cfg.max_terms, cfg.term_tol)
    }
}

#[cfg(test)]
#[allow(clippy::approx_constant, clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::params::classify;
    use crate::special::SQRT_PI;

    fn p(a: f64, b: f64) -> MLParams {
        classify(a, b).unwrap()
    }

    // 400-digit Taylor sums of the exact binary (α, β, x)
    const HIGH_PRECISION: [(f64, f64, f64, f64); 17] = [
        (0.3, 0.7, 1.0, 0.313_788_775_536_875_308_09),
        (0.3, 0.7, 1.5, 0.237_310_699_006_161_264_19),
        (0.3, 0.7, 2.0, 0.189_918_731_530_815_278_18),
        (0.5, 0.8, 3.0, 0.121_049_950_524_513_979_27),
        (0.7, 1.3, 8.0, 0.084_947_137_487_791_649_69),
        (0.9, 2.5, 20.0, 0.054_010_684_737_158_897_934),
        (1.0, 2.5, 15.0, 0.072_623_938_770_939_259_694),
        (1.0, 2.5, 29.0, 0.038_226_547_076_027_641_698),
        (0.2, 1.2, 1.5, 0.419_348_681_077_342_696_41),
        (0.6, 0.6, 5.0, 0.011_732_767_406_084_412_17),
        (0.5, 0.75, 1.0, 0.293_870_159_963_636_195_99),
        (0.4, 0.9, 10.0, 0.055_160_735_478_543_130_558),
        (0.25, 0.5, 3.0, 0.087_082_614_296_628_537_004),
        (0.8, 1.0, 12.0, 0.020_268_165_216_948_834_128),
        (0.95, 3.0, 25.0, 0.037_461_029_184_286_539_086),
        (0.15, 0.4, 1.5, 0.138_392_444_236_264_229_14),
        (0.5, 1.7, 6.0, 0.161_280_551_430_923_782_75),
    ];

    #[test]
    fn oracle_matches_high_precision_sums() {
        let cfg = OracleConfig::default();
        for (a, b, x, want) in HIGH_PRECISION {
            let got = ml_oracle(&p(a, b), x, &cfg).unwrap();
            assert!(
                (got - want).abs() < 1e-10,
                "E_{{{a},{b}}}(-{x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn taylor_examples() {
        let cfg = OracleConfig::default();
        let v = ml_taylor(&p(0.5, 1.5), 0.0, &cfg).unwrap();
        assert!((v - 2.0 / SQRT_PI).abs() < 1e-15);
        assert_eq!(ml_taylor(&p(0.3, 0.7), 0.0, &cfg).unwrap(), rgamma(0.7));
        let e = ml_taylor(&p(1.0, 1.0), 1.0, &cfg).unwrap();
        assert!((e - (-1f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn taylor_rejects_beyond_cutoff() {
        let cfg = OracleConfig::default();
        assert!(matches!(
            ml_taylor(&p(0.5, 0.8), 3.0, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(ml_taylor(&p(0.5, 0.8), -1.0, &cfg).is_err());
    }

    #[test]
    fn taylor_reports_non_convergence() {
        let cfg = OracleConfig::new(5.0, 30.0, 10, 1e-17).unwrap();
        let err = ml_taylor(&p(1.0, 1.5), 5.0, &cfg).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { terms: 10, .. }));
    }

    #[test]
    fn asymptotic_examples() {
        let x = 1e4;
        let closed = special::one_minus_erfcx_over_x(x).unwrap();
        let asym = ml_asymptotic(&p(0.5, 1.5), x, 2);
        assert!(((asym - closed) / closed).abs() < 1e-6);

        // k = 1 term vanishes at the pole Γ(0)
        let x: f64 = 50.0;
        let two = ml_asymptotic(&p(0.5, 0.5), x, 2);
        assert!((two - (-rgamma(-0.5) / (x * x))).abs() < 1e-18);

        let x = 100.0;
        let closed = special::erfcx(x).unwrap();
        let asym = ml_asymptotic(&p(0.5, 1.0), x, 3);
        assert!(((asym - closed) / closed).abs() < 1e-6);
    }

    #[test]
    fn asymptotic_alpha_one() {
        // E_{1,2}(-x) = (1 - e^{-x})/x; the series is exactly 1/x
        let v = ml_asymptotic(&p(1.0, 2.0), 40.0, 400);
        assert!((v - 1.0 / 40.0).abs() < 1e-17);
    }

    #[test]
    fn closed_forms() {
        let x: f64 = 0.7;
        let e = special::erfcx(x).unwrap();
        let close = |a: f64, b: f64| ml_closed_form(&p(a, b), x).unwrap();
        assert!((close(0.5, 1.5) - (1.0 - e) / x).abs() < 1e-15);
        assert!((close(0.5, 0.5) - (1.0 / SQRT_PI - x * e)).abs() < 1e-15);
        assert!((close(1.0, 2.0) - (1.0 - (-x).exp()) / x).abs() < 1e-15);
        assert_eq!(ml_closed_form(&p(1.0, 2.0), 0.0), Some(1.0));
        assert_eq!(ml_closed_form(&p(0.3, 0.7), 1.0), None);
    }

    #[test]
    fn closed_form_agrees_with_taylor() {
        let cfg = OracleConfig::default();
        for (a, b) in [(0.5, 1.0), (0.5, 1.5), (0.5, 0.5), (1.0, 2.0), (1.0, 1.0)] {
            let params = p(a, b);
            for i in 0..=200 {
                let x = 2.0 * i as f64 / 200.0;
                let t = ml_taylor(&params, x, &cfg).unwrap();
                let c = ml_closed_form(&params, x).unwrap();
                assert!((t - c).abs() <= 1e-10, "({a},{b}) at {x}: {t} vs {c}");
            }
        }
    }

    #[test]
    fn gap_refused_for_tiny_alpha() {
        let cfg = OracleConfig::default();
        let params = p(0.05, 0.5);
        let x = 10f64.powf(0.05); // X = 10
        assert!(matches!(
            ml_oracle(&params, x, &cfg),
            Err(Error::OracleRefused { .. })
        ));
        // both series ends still work
        assert!(ml_oracle(&params, 1.0, &cfg).is_ok());
        assert!(ml_oracle(&params, 2.0, &cfg).is_ok());
    }

    #[test]
    fn config_validation() {
        assert!(OracleConfig::new(5.0, 30.0, 400, 1e-17).is_ok());
        assert!(OracleConfig::new(31.0, 30.0, 400, 1e-17).is_err());
        assert!(OracleConfig::new(0.0, 30.0, 400, 1e-17).is_err());
        assert!(OracleConfig::new(5.0, 30.0, 9, 1e-17).is_err());
        assert!(OracleConfig::new(5.0, 30.0, 400, 1e-5).is_err());
    }

    #[test]
    fn oracle_at_origin_is_reciprocal_gamma() {
        let cfg = OracleConfig::default();
        for (a, b) in [(0.5, 1.5), (0.3, 0.7), (1.0, 2.0), (0.5, 0.5)] {
            assert_eq!(ml_oracle(&p(a, b), 0.0, &cfg).unwrap(), rgamma(b));
        }
    }
}
