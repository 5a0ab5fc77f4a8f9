//! The invariant suite behind `mlpade selftest`.
//!
//! Every check is deterministic and quick; the whole suite runs in well
//! under a second in release builds.

use std::f64::consts::PI;

use crate::error::Result;
use crate::fode::{relaxation_pade, two_term_coeffs, RelaxationSpec, TwoTermSpec};
use crate::harness::{error_scan, GridSpec, Scale};
use crate::inverse::{inv_pade, invert};
use crate::pade::{build_approx, coeffs_from_closed_form, eval_approx, solve_hermite_pade};
use crate::params::classify;
use crate::reference::{ml_closed_form, ml_oracle, ml_taylor, OracleConfig};
use crate::special::{gamma, rgamma, sin_pi, SQRT_PI};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Worst discrepancy seen, or the error that stopped the check.
    pub detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

// a check body returns the worst observed value, compared against `tol`
fn run(name: &'static str, tol: f64, body: impl FnOnce() -> Result<f64>) -> Check {
    match body() {
        Ok(worst) => Check {
            name,
            passed: worst <= tol,
            detail: format!("worst {worst:e} (tolerance {tol:e})"),
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

const WORKED: [(f64, f64); 4] = [(0.5, 1.5), (0.5, 1.0), (0.5, 0.5), (1.0, 2.0)];

fn sample_pairs() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 1..=9 {
        let a = i as f64 / 10.0;
        for b in [a + 0.1, 1.0, 1.5, 2.0, 3.0] {
            out.push((a, b));
        }
    }
    out
}

pub fn run_selftest() -> Vec<Check> {
    let cfg = OracleConfig::default();
    let mut checks = Vec::new();

    checks.push(run("gamma times rgamma is one", 1e-13, || {
        let mut worst = 0.0f64;
        for i in 0..200 {
            let x = -20.3 + 0.237 * i as f64;
            worst = worst.max((gamma(x)? * rgamma(x) - 1.0).abs());
        }
        Ok(worst)
    }));

    checks.push(run("rgamma vanishes at poles", 0.0, || {
        Ok((0..20)
            .map(|n| rgamma(-(n as f64)).abs())
            .fold(0.0, f64::max))
    }));

    checks.push(run("reflection formula", 1e-13, || {
        let mut worst = 0.0f64;
        for i in 1..40 {
            let x = i as f64 / 40.0 + 0.0125;
            worst = worst.max(rel(gamma(x)? * gamma(1.0 - x)?, PI / sin_pi(x)));
        }
        Ok(worst)
    }));

    checks.push(run("series matches closed forms", 1e-10, || {
        let mut worst = 0.0f64;
        for (a, b) in [(0.5, 1.0), (0.5, 1.5), (0.5, 0.5), (1.0, 2.0), (1.0, 1.0)] {
            let p = classify(a, b)?;
            for i in 0..=40 {
                let x = i as f64 / 20.0;
                let closed = ml_closed_form(&p, x).expect("closed form exists");
                worst = worst.max((ml_taylor(&p, x, &cfg)? - closed).abs());
            }
        }
        Ok(worst)
    }));

    checks.push(run("recurrence identity", 1e-9, || {
        let mut worst = 0.0f64;
        let grid = GridSpec::new(1e-4, 1e4, 200, Scale::Logarithmic, true)?;
        for (a, b) in [(0.3, 0.8), (0.7, 2.2), (0.95, 1.05), (0.15, 2.9)] {
            let p = classify(a, b)?;
            let q = classify(a, a + b)?;
            for x in grid.points() {
                let lhs = ml_oracle(&p, x, &cfg)?;
                let rhs = -x * ml_oracle(&q, x, &cfg)? + rgamma(b);
                worst = worst.max((lhs - rhs).abs());
            }
        }
        Ok(worst)
    }));

    checks.push(run("worked approximants", 1e-12, || {
        let want = [
            [
                2.0 / SQRT_PI,
                (4.0 - PI) / (PI - 2.0),
                SQRT_PI / (PI - 2.0),
                (4.0 - PI) / (PI - 2.0),
            ],
            [1.0, (PI - 2.0) / SQRT_PI, SQRT_PI, PI - 2.0],
            [1.0 / SQRT_PI, 0.0, 0.0, 2.0],
            [1.0, 0.5, 1.0, 0.5],
        ];
        let mut worst = 0.0f64;
        for ((a, b), w) in WORKED.iter().zip(want) {
            let ap = build_approx(&classify(*a, *b)?)?;
            for (got, w) in [ap.n0(), ap.n1(), ap.d1(), ap.d2()].into_iter().zip(w) {
                worst = worst.max(if w == 0.0 { got.abs() } else { rel(got, w) });
            }
        }
        Ok(worst)
    }));

    checks.push(run("linear solve matches closed form", 1e-10, || {
        let mut worst = 0.0f64;
        for (a, b) in sample_pairs() {
            let p = classify(a, b)?;
            let c1 = solve_hermite_pade(&p)?;
            let c2 = coeffs_from_closed_form(&p)?;
            worst = worst
                .max(rel(c1.p1, c2.p1))
                .max(rel(c1.q0, c2.q0))
                .max(rel(c1.q1, c2.q1));
        }
        Ok(worst)
    }));

    checks.push(run("value and slope at the origin", 1e-10, || {
        let mut worst = 0.0f64;
        for (a, b) in sample_pairs().into_iter().chain([(1.0, 2.0), (1.0, 3.5)]) {
            let ap = build_approx(&classify(a, b)?)?;
            if eval_approx(&ap, 0.0) != rgamma(b) {
                return Ok(f64::INFINITY);
            }
            worst = worst.max(rel(ap.n1() - ap.n0() * ap.d1(), -rgamma(b + a)));
        }
        Ok(worst)
    }));

    checks.push(run("large-x asymptotics", 1e-4, || {
        let x = 1e8;
        let mut worst = 0.0f64;
        for (a, b) in sample_pairs() {
            let p = classify(a, b)?;
            let ap = build_approx(&p)?;
            let g = gamma(b - a)?;
            // the leading term is held to 1e-6, a hundredth of the tolerance
            worst = worst.max(100.0 * rel(x * eval_approx(&ap, x), 1.0 / g));
            let second = (g * x * eval_approx(&ap, x) - 1.0) * x;
            let want = -g * rgamma(b - 2.0 * a);
            worst = worst.max(if want.abs() < 1e-12 {
                second.abs()
            } else {
                rel(second, want)
            });
        }
        for a in [0.2, 0.5, 0.6] {
            let ap = build_approx(&classify(a, a)?)?;
            let want = sin_pi(a) * gamma(1.0 + a)? / PI;
            worst = worst.max(100.0 * rel(x * x * eval_approx(&ap, x), want));
        }
        Ok(worst)
    }));

    checks.push(run("approximants positive and decreasing", 0.0, || {
        let mut violations = 0.0;
        for (a, b) in sample_pairs()
            .into_iter()
            .chain([(0.5, 0.5), (0.3, 0.3), (1.0, 2.0)])
        {
            let ap = build_approx(&classify(a, b)?)?;
            let mut prev = eval_approx(&ap, 0.0);
            for i in 0..=300 {
                let v = eval_approx(&ap, 1e-4 * 10f64.powf(7.0 * i as f64 / 300.0));
                if !(v > 0.0 && v <= prev) {
                    violations += 1.0;
                }
                prev = v;
            }
        }
        Ok(violations)
    }));

    checks.push(run("inverse round trip", 1e-9, || {
        let mut worst = 0.0f64;
        for (a, b) in WORKED
            .into_iter()
            .chain([(0.3, 0.8), (0.9, 2.7), (1.0, 1.5)])
        {
            let p = classify(a, b)?;
            let ap = build_approx(&p)?;
            if inv_pade(&p, rgamma(b))? != 0.0 {
                return Ok(f64::INFINITY);
            }
            for k in 1..=200 {
                let y = rgamma(b) * k as f64 / 200.0;
                worst = worst.max(rel(eval_approx(&ap, invert(&ap, y)?), y));
            }
        }
        let p = classify(1.0, 1.0)?;
        for y in [1e-10, 0.3, 0.9] {
            worst = worst.max(rel(inv_pade(&p, y)?, -y.ln()) * 1e5);
        }
        Ok(worst)
    }));

    checks.push(run(
        "relaxation solution is the diagonal approximant",
        1e-12,
        || {
            let mut worst = 0.0f64;
            for (a, l, c1) in [(0.5, 1.0, 1.0), (0.3, 2.0, -1.5), (0.6, 0.25, 2.0)] {
                let s = RelaxationSpec::new(a, l, c1)?;
                let ap = build_approx(&classify(a, a)?)?;
                for t in [0.1, 1.0, 10.0] {
                    let want = c1 * f64::powf(t, -a) * eval_approx(&ap, l * f64::powf(t, a));
                    worst = worst.max(rel(relaxation_pade(&s, t)?, want));
                }
            }
            Ok(worst)
        },
    ));

    checks.push(run(
        "two-term coefficients under substitution",
        1e-12,
        || {
            let mut worst = 0.0f64;
            for (a, b) in [(0.25, 0.75), (0.1, 0.5), (0.45, 0.95), (0.6, 0.7)] {
                let c = two_term_coeffs(&TwoTermSpec::new(a, b, 0.0)?)?;
                let want = coeffs_from_closed_form(&classify(b - a, b)?)?;
                worst = worst.max(rel(c.q0, want.q0)).max(rel(c.q1, want.q1));
            }
            Ok(worst)
        },
    ));

    for (name, a, b, want, tol) in [
        ("maximum error (1/2, 3/2)", 0.5, 1.5, 0.0034, 5e-4),
        ("maximum error (1/2, 1)", 0.5, 1.0, 0.0079, 5e-4),
        ("maximum error (1/2, 1/2)", 0.5, 0.5, 0.1349, 5e-3),
        ("maximum error (1, 2)", 1.0, 2.0, 0.0352, 1e-3),
    ] {
        checks.push(run(name, tol, || {
            let r = error_scan(&classify(a, b)?, &GridSpec::default(), &cfg)?;
            Ok((r.max_abs_error - want).abs())
        }));
    }

    checks
}
