//! Error scans of the approximants against the reference evaluator.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fode::OdeSpec;
use crate::format::fmt_num;
use crate::inverse::invert;
use crate::pade::{build_approx, eval_approx};
use crate::params::{MLParams, Regime};
use crate::reference::{ml_oracle, OracleConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Logarithmic,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    x_min: f64,
    x_max: f64,
    n_points: usize,
    scale: Scale,
    include_zero: bool,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            x_min: 1e-4,
            x_max: 1e4,
            n_points: 4000,
            scale: Scale::Logarithmic,
            include_zero: true,
        }
    }
}

impl GridSpec {
    pub fn new(
        x_min: f64,
        x_max: f64,
        n_points: usize,
        scale: Scale,
        include_zero: bool,
    ) -> Result<Self> {
        if !(x_min > 0.0 && x_min < x_max && x_max.is_finite()) {
            return Err(Error::Config(format!(
                "grid needs 0 < x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 2 {
            return Err(Error::Config(format!(
                "grid needs at least 2 points, got {n_points}"
            )));
        }
        Ok(GridSpec {
            x_min,
            x_max,
            n_points,
            scale,
            include_zero,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn include_zero(&self) -> bool {
        self.include_zero
    }

    /// The same grid with twice as many points.
    pub fn refined(&self) -> Self {
        GridSpec {
            n_points: 2 * self.n_points,
            ..*self
        }
    }

    /// Grid points in ascending order; the endpoints are hit exactly.
    pub fn points(&self) -> Vec<f64> {
        let n = self.n_points;
        let last = (n - 1) as f64;
        let mut out = Vec::with_capacity(n + 1);
        if self.include_zero {
            out.push(0.0);
        }
        let (lo, hi) = match self.scale {
            Scale::Logarithmic => (self.x_min.ln(), self.x_max.ln()),
            Scale::Linear => (self.x_min, self.x_max),
        };
        for i in 0..n {
            let x = if i == 0 {
                self.x_min
            } else if i == n - 1 {
                self.x_max
            } else {
                let s = lo + (hi - lo) * (i as f64 / last);
                match self.scale {
                    Scale::Logarithmic => s.exp(),
                    Scale::Linear => s,
                }
            };
            out.push(x);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub approx: f64,
    pub oracle: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub params: MLParams,
    pub grid: GridSpec,
    pub max_abs_error: f64,
    pub argmax_x: f64,
    pub samples: Vec<Sample>,
}

// first sample attaining the maximum, so ties resolve to the smallest x
fn argmax(samples: &[Sample]) -> (f64, f64) {
    let mut best = (0.0, f64::NAN);
    for s in samples {
        if best.1.is_nan() || s.abs_error > best.0 {
            best = (s.abs_error, s.x);
        }
    }
    best
}

/// Compare the approximant with the oracle at every grid point.
pub fn error_scan(params: &MLParams, grid: &GridSpec, cfg: &OracleConfig) -> Result<ErrorReport> {
    let approx = build_approx(params)?;
    let samples = grid
        .points()
        .into_par_iter()
        .map(|x| {
            let oracle = ml_oracle(params, x, cfg).map_err(|e| e.at(x))?;
            let a = eval_approx(&approx, x);
            Ok(Sample {
                x,
                approx: a,
                oracle,
                abs_error: (a - oracle).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (max_abs_error, argmax_x) = argmax(&samples);
    Ok(ErrorReport {
        params: *params,
        grid: *grid,
        max_abs_error,
        argmax_x,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Summary,
}

/// Render a report as CSV (`x,approx,oracle,abs_error`) or as the one-line
/// summary `alpha,beta,max_abs_error,argmax_x`. Lines end in `\n`.
pub fn emit_report(report: &ErrorReport, format: ReportFormat) -> Vec<u8> {
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str("x,approx,oracle,abs_error\n");
            for s in &report.samples {
                push_row(&mut out, &[s.x, s.approx, s.oracle, s.abs_error]);
            }
        }
        ReportFormat::Summary => push_row(
            &mut out,
            &[
                report.params.alpha(),
                report.params.beta(),
                report.max_abs_error,
                report.argmax_x,
            ],
        ),
    }
    out.into_bytes()
}

fn push_row(out: &mut String, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&fmt_num(*v));
    }
    out.push('\n');
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseSample {
    pub y: f64,
    pub approx_x: f64,
    pub true_x: f64,
    pub abs_error: f64,
    pub scaled_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InverseErrorReport {
    pub params: MLParams,
    /// max |Δx|
    pub max_abs_error: f64,
    pub argmax_y: f64,
    /// max |Δx|/(1+x)
    pub max_scaled_error: f64,
    pub argmax_scaled_y: f64,
    pub samples: Vec<InverseSample>,
}

/// `n` equally spaced values `rgamma(β)·k/n`, `k = 1..=n`.
pub fn inverse_points(params: &MLParams, n: usize) -> Vec<f64> {
    let top = crate::special::rgamma(params.beta());
    (1..=n)
        .map(|k| {
            if k == n {
                top
            } else {
                top * k as f64 / n as f64
            }
        })
        .collect()
}

const BISECT_Y_TOL: f64 = 1e-10;

/// The `x ≥ 0` with `E_{α,β}(-x) = y`, by bisection on the oracle.
pub fn true_inverse(params: &MLParams, y: f64, cfg: &OracleConfig) -> Result<f64> {
    let top = crate::special::rgamma(params.beta());
    if !(y > 0.0 && y <= top) {
        return Err(Error::Domain(format!("y = {y} is outside (0, {top}]")));
    }
    if y == top {
        return Ok(0.0);
    }
    if params.regime() == Regime::PureExponential {
        return Ok(-y.ln());
    }
    let f = |x: f64| ml_oracle(params, x, cfg);
    let (mut lo, mut f_lo) = (0.0, top);
    let mut hi = 1.0;
    let mut f_hi = f(hi)?;
    while f_hi > y {
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::Bracket {
                y,
                reason: "no upper bracket below 1e300",
            });
        }
        f_hi = f(hi)?;
    }
    // bisect until the interval stops shrinking
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid)?;
        if f_mid > f_lo + 1e-13 || f_mid < f_hi - 1e-13 {
            return Err(Error::Bracket {
                y,
                reason: "oracle is not monotone inside the bracket",
            });
        }
        if f_mid > y {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let x = 0.5 * (lo + hi);
    if (f(x)? - y).abs() > BISECT_Y_TOL {
        return Err(Error::Bracket {
            y,
            reason: "bisection did not reach the y tolerance",
        });
    }
    Ok(x)
}

/// Compare the inverse approximant with the bisection inverse at each `y`.
pub fn inverse_error_scan(
    params: &MLParams,
    ys: &[f64],
    cfg: &OracleConfig,
) -> Result<InverseErrorReport> {
    let approx = build_approx(params)?;
    let samples = ys
        .par_iter()
        .map(|&y| {
            let approx_x = invert(&approx, y)?;
            let true_x = true_inverse(params, y, cfg)?;
            let abs_error = (approx_x - true_x).abs();
            Ok(InverseSample {
                y,
                approx_x,
                true_x,
                abs_error,
                scaled_error: abs_error / (1.0 + true_x),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = InverseErrorReport {
        params: *params,
        max_abs_error: 0.0,
        argmax_y: f64::NAN,
        max_scaled_error: 0.0,
        argmax_scaled_y: f64::NAN,
        samples,
    };
    for s in &report.samples {
        if report.argmax_y.is_nan() || s.abs_error > report.max_abs_error {
            report.max_abs_error = s.abs_error;
            report.argmax_y = s.y;
        }
        if report.argmax_scaled_y.is_nan() || s.scaled_error > report.max_scaled_error {
            report.max_scaled_error = s.scaled_error;
            report.argmax_scaled_y = s.y;
        }
    }
    Ok(report)
}

pub fn emit_inverse_report(report: &InverseErrorReport, format: ReportFormat) -> Vec<u8> {
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str("y,approx_x,true_x,abs_error,scaled_error\n");
            for s in &report.samples {
                push_row(
                    &mut out,
                    &[s.y, s.approx_x, s.true_x, s.abs_error, s.scaled_error],
                );
            }
        }
        ReportFormat::Summary => push_row(
            &mut out,
            &[
                report.params.alpha(),
                report.params.beta(),
                report.max_abs_error,
                report.argmax_y,
                report.max_scaled_error,
                report.argmax_scaled_y,
            ],
        ),
    }
    out.into_bytes()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeReport {
    pub spec: OdeSpec,
    pub max_abs_error: f64,
    pub argmax_t: f64,
    /// `x` holds `t`, `approx` the rational solution, `oracle` the exact one.
    pub samples: Vec<Sample>,
}

/// Compare the rational ODE solution with the exact one over `t`.
pub fn ode_error_scan(spec: &OdeSpec, grid: &GridSpec, cfg: &OracleConfig) -> Result<OdeReport> {
    if grid.include_zero() {
        return Err(Error::Config(
            "the ODE solutions are singular at t = 0".into(),
        ));
    }
    let samples = grid
        .points()
        .into_par_iter()
        .map(|t| {
            let exact = spec.exact(t, cfg).map_err(|e| e.at(t))?;
            let pade = spec.pade(t).map_err(|e| e.at(t))?;
            Ok(Sample {
                x: t,
                approx: pade,
                oracle: exact,
                abs_error: (pade - exact).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (max_abs_error, argmax_t) = argmax(&samples);
    Ok(OdeReport {
        spec: *spec,
        max_abs_error,
        argmax_t,
        samples,
    })
}

pub fn emit_ode_csv(report: &OdeReport) -> Vec<u8> {
    let mut out = String::from("t,pade,exact,abs_error\n");
    for s in &report.samples {
        push_row(&mut out, &[s.x, s.approx, s.oracle, s.abs_error]);
    }
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::classify;

    #[test]
    fn default_grid() {
        let g = GridSpec::default();
        let p = g.points();
        assert_eq!(p.len(), 4001);
        assert_eq!((p[0], p[1], p[4000]), (0.0, 1e-4, 1e4));
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        assert!(GridSpec::new(1.0, 1.0, 10, Scale::Linear, false).is_err());
        assert!(GridSpec::new(1.0, 2.0, 1, Scale::Linear, false).is_err());
        assert!(GridSpec::new(0.0, 2.0, 10, Scale::Linear, false).is_err());
        let lin = GridSpec::new(1.0, 2.0, 5, Scale::Linear, false)
            .unwrap()
            .points();
        assert_eq!(lin, vec![1.0, 1.25, 1.5, 1.75, 2.0]);
    }

    #[test]
    fn csv_shape() {
        let p = classify(0.5, 1.5).unwrap();
        let g = GridSpec::new(1e-2, 1e2, 5, Scale::Logarithmic, true).unwrap();
        let r = error_scan(&p, &g, &OracleConfig::default()).unwrap();
        let csv = String::from_utf8(emit_report(&r, ReportFormat::Csv)).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,approx,oracle,abs_error");
        assert_eq!(lines[1], "0,1.1283791670955126,1.1283791670955126,0");
        assert_eq!(lines.len(), 7);
        assert!(!csv.contains('\r') && csv.ends_with('\n'));
        let summary = String::from_utf8(emit_report(&r, ReportFormat::Summary)).unwrap();
        assert!(summary.starts_with("0.5,1.5,"));
        assert_eq!(summary.lines().count(), 1);
    }

    #[test]
    fn inverse_boundaries() {
        let cfg = OracleConfig::default();
        for (a, b) in [(0.5, 1.0), (1.0, 1.0)] {
            let p = classify(a, b).unwrap();
            let r = inverse_error_scan(&p, &inverse_points(&p, 8), &cfg).unwrap();
            let last = r.samples.last().unwrap();
            assert_eq!(
                (last.approx_x, last.true_x, last.abs_error),
                (0.0, 0.0, 0.0)
            );
            if a == 1.0 {
                assert_eq!(r.max_abs_error, 0.0);
            }
        }
        let p = classify(0.5, 1.0).unwrap();
        let r = inverse_error_scan(&p, &[0.5], &cfg).unwrap();
        assert!(
            r.max_abs_error.is_finite() && r.max_abs_error < 0.2,
            "{}",
            r.max_abs_error
        );
    }

    #[test]
    fn bisection_inverts_oracle() {
        let cfg = OracleConfig::default();
        let p = classify(0.5, 1.5).unwrap();
        for x in [0.01, 0.7, 3.0, 40.0] {
            let y = ml_oracle(&p, x, &cfg).unwrap();
            let back = true_inverse(&p, y, &cfg).unwrap();
            assert!(((back - x) / x).abs() < 1e-9, "x = {x}: {back}");
        }
    }
}
