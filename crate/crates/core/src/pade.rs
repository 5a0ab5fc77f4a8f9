//! Degree-2 global Padé approximants of `E_{α,β}(-x)`.
//!
//! For the general and β = 1 regimes the approximant of
//! `Γ(β-α)·x·E_{α,β}(-x)` is `(p0 + p1 x + x²)/(q0 + q1 x + x²)`, with the
//! four unknowns fixed by matching the Taylor expansion at 0 through `O(x³)`
//! and the asymptotic expansion at infinity through `O(x⁻²)`. Dividing
//! through gives the unified form
//!
//! ```text
//! A(x) = (n0 + n1 x) / (1 + d1 x + d2 x²)
//! ```
//!
//! which also hosts the diagonal (α = β) and α = 1 approximants.

use crate::error::{Error, Result};
use crate::params::{MLParams, Regime};
use crate::special::{gamma, rgamma};

/// Computed Γ arguments within this distance of a nonpositive integer are
/// treated as sitting on the pole.
pub const POLE_SNAP_TOL: f64 = 1e-12;

/// Relative pivot size below which the matching system counts as singular.
const PIVOT_TOL: f64 = 1e-8;

/// Snap a computed argument onto a nonpositive integer if it is within
/// [`POLE_SNAP_TOL`] of one.
pub fn snap_to_pole(z: f64) -> f64 {
    let r = z.round();
    if r <= 0.0 && (z - r).abs() <= POLE_SNAP_TOL {
        r
    } else {
        z
    }
}

/// Unknowns of the matching problem for `Γ(β-α)·x·E_{α,β}(-x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PadeCoeffs {
    pub p0: f64,
    pub p1: f64,
    pub q0: f64,
    pub q1: f64,
}

/// The Γ values shared by both construction paths.
struct GammaFactors {
    /// Γ(β)
    g_b: f64,
    /// Γ(β+α)
    g_bpa: f64,
    /// Γ(β-α)
    g_bma: f64,
    /// 1/Γ(β-2α), snapped to zero at poles
    r_b2a: f64,
}

impl GammaFactors {
    fn new(params: &MLParams) -> Result<Self> {
        let (a, b) = (params.alpha(), params.beta());
        Ok(GammaFactors {
            g_b: gamma(b)?,
            g_bpa: gamma(b + a)?,
            g_bma: gamma(b - a)?,
            r_b2a: rgamma(snap_to_pole(b - 2.0 * a)),
        })
    }
}

fn require_matching_regime(params: &MLParams) -> Result<()> {
    match params.regime() {
        Regime::GeneralSub | Regime::BetaOne => Ok(()),
        other => Err(Error::Domain(format!(
            "Hermite-Padé coefficients are defined for the general and beta-one regimes, not {other}"
        ))),
    }
}

// A linear form in the unknowns (p0, p1, q0, q1) plus a constant.
type Form = [f64; 5];

fn unknown(i: usize) -> Form {
    let mut f = [0.0; 5];
    f[i] = 1.0;
    f
}

fn constant(c: f64) -> Form {
    [0.0, 0.0, 0.0, 0.0, c]
}

fn axpy(acc: &mut Form, scale: f64, f: &Form) {
    for (a, v) in acc.iter_mut().zip(f) {
        *a += scale * v;
    }
}

/// Gaussian elimination with partial pivoting on a 4×4 system.
fn solve4(mut m: [[f64; 4]; 4], mut rhs: [f64; 4]) -> Result<[f64; 4]> {
    let scale = m.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Degenerate(
            "matching system has no finite nonzero entries".into(),
        ));
    }
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap_or(col);
        if m[pivot][col].abs() < PIVOT_TOL * scale {
            return Err(Error::Degenerate(format!(
                "matching system is singular (pivot {:e} in column {col})",
                m[pivot][col]
            )));
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let pivot_row = m[col];
        for row in col + 1..4 {
            let factor = m[row][col] / pivot_row[col];
            for (v, p) in m[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= factor * p;
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut out = [0.0; 4];
    for row in (0..4).rev() {
        let mut s = rhs[row];
        for k in row + 1..4 {
            s -= m[row][k] * out[k];
        }
        out[row] = s / m[row][row];
    }
    Ok(out)
}

/// Solve the matching conditions numerically.
///
/// Equates the coefficients of `x^0 .. x^2` in `p(x) - q(x) a(x)` and of
/// `x^0, x^-1` in `(p(x) - q(x) b(1/x)) / x²`, where
/// `a(x) = Γ(β-α)/Γ(β)·x - Γ(β-α)/Γ(β+α)·x²` and
/// `b(u) = 1 - Γ(β-α)/Γ(β-2α)·u`. Rows that carry no unknowns must be
/// identically satisfied.
pub fn solve_hermite_pade(params: &MLParams) -> Result<PadeCoeffs> {
    require_matching_regime(params)?;
    let g = GammaFactors::new(params)?;
    let taylor = [0.0, g.g_bma / g.g_b, -g.g_bma / g.g_bpa];
    let asymptotic = [1.0, -g.g_bma * g.r_b2a];

    let p = [unknown(0), unknown(1), constant(1.0)];
    let q = [unknown(2), unknown(3), constant(1.0)];

    let mut rows: Vec<Form> = Vec::with_capacity(5);
    for j in 0..taylor.len() {
        let mut f = p[j];
        for (i, qi) in q.iter().enumerate().take(j + 1) {
            axpy(&mut f, -taylor[j - i], qi);
        }
        rows.push(f);
    }
    for l in 0..asymptotic.len() {
        let mut f = p[2 - l];
        for i in 0..=l {
            axpy(&mut f, -asymptotic[l - i], &q[2 - i]);
        }
        rows.push(f);
    }

    let mut system = Vec::with_capacity(4);
    for f in rows {
        if f[..4].iter().all(|&c| c == 0.0) {
            if f[4] != 0.0 {
                return Err(Error::Degenerate("inconsistent matching condition".into()));
            }
            continue;
        }
        system.push(f);
    }
    if system.len() != 4 {
        return Err(Error::Degenerate(format!(
            "expected 4 matching equations, found {}",
            system.len()
        )));
    }
    let mut m = [[0.0; 4]; 4];
    let mut rhs = [0.0; 4];
    for (r, f) in system.iter().enumerate() {
        m[r].copy_from_slice(&f[..4]);
        rhs[r] = -f[4];
    }
    let [p0, p1, q0, q1] = solve4(m, rhs)?;
    Ok(PadeCoeffs { p0, p1, q0, q1 })
}

/// The closed-form solution of the matching conditions.
///
/// β = 1 uses the specialised `q0*`, `q1*` expressions.
pub fn coeffs_from_closed_form(params: &MLParams) -> Result<PadeCoeffs> {
    require_matching_regime(params)?;
    let g = GammaFactors::new(params)?;
    let den = g.g_bpa * g.g_bma - g.g_b * g.g_b;
    if den.is_nan() || den.abs() < 1e-14 * g.g_b * g.g_b {
        return Err(Error::Degenerate(format!(
            "Γ(β+α)Γ(β-α) - Γ(β)² = {den:e} at alpha = {}, beta = {}",
            params.alpha(),
            params.beta()
        )));
    }
    let p1 = (g.g_b * g.g_bpa - g.g_bpa * g.g_bma * g.g_bma * g.r_b2a) / den;
    let (q0, q1) = if params.regime() == Regime::BetaOne {
        let a = params.alpha();
        let g1p = gamma(1.0 + a)?;
        let g1m = gamma(1.0 - a)?;
        let r = rgamma(snap_to_pole(1.0 - 2.0 * a));
        let den1 = g1p * g1m - 1.0;
        ((g1p / g1m - g1p * g1m * r) / den1, (g1p - g1m * r) / den1)
    } else {
        (
            (g.g_b * g.g_b * g.g_bpa / g.g_bma - g.g_b * g.g_bpa * g.g_bma * g.r_b2a) / den,
            (g.g_b * g.g_bpa - g.g_b * g.g_b * g.g_bma * g.r_b2a) / den,
        )
    };
    Ok(PadeCoeffs {
        p0: 0.0,
        p1,
        q0,
        q1,
    })
}

/// `A(x) = (n0 + n1 x)/(1 + d1 x + d2 x²)`; immutable once built.
///
/// For [`Regime::PureExponential`] the coefficients are placeholders and
/// [`eval_approx`] returns `exp(-x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalApprox {
    n0: f64,
    n1: f64,
    d1: f64,
    d2: f64,
    regime: Regime,
}

impl RationalApprox {
    pub fn n0(&self) -> f64 {
        self.n0
    }

    pub fn n1(&self) -> f64 {
        self.n1
    }

    pub fn d1(&self) -> f64 {
        self.d1
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn is_exact(&self) -> bool {
        self.regime == Regime::PureExponential
    }
}

/// True when `1 + d1 x + d2 x²` has no root on `[0, ∞)`.
pub fn denominator_root_free(d1: f64, d2: f64) -> bool {
    // both roots negative (sum -d1/d2 < 0, product 1/d2 > 0) or complex
    d2 > 0.0 && (d1 >= 0.0 || d1 * d1 < 4.0 * d2)
}

/// Assemble the approximant for a parameter pair.
pub fn build_approx(params: &MLParams) -> Result<RationalApprox> {
    let (a, b) = (params.alpha(), params.beta());
    let regime = params.regime();
    let (n0, n1, d1, d2) = match regime {
        Regime::GeneralSub | Regime::BetaOne => {
            let c = coeffs_from_closed_form(params)?;
            if c.q0 == 0.0 || !c.q0.is_finite() {
                return Err(Error::Degenerate(format!("q0 = {}", c.q0)));
            }
            (
                rgamma(b),
                1.0 / (gamma(b - a)? * c.q0),
                c.q1 / c.q0,
                1.0 / c.q0,
            )
        }
        Regime::Diagonal => {
            let g1m = gamma(1.0 - a)?;
            let g1p = gamma(1.0 + a)?;
            let r = rgamma(snap_to_pole(1.0 - 2.0 * a));
            (rgamma(a), 0.0, 2.0 * g1m * g1m * r / g1p, g1m / g1p)
        }
        Regime::AlphaOne => (rgamma(b), rgamma(b + 1.0), 2.0 / b, 1.0 / (b * (b - 1.0))),
        Regime::PureExponential => {
            return Ok(RationalApprox {
                n0: 1.0,
                n1: 0.0,
                d1: 0.0,
                d2: 0.0,
                regime,
            })
        }
    };
    if ![n0, n1, d1, d2].iter().all(|v| v.is_finite()) {
        return Err(Error::Degenerate(format!(
            "non-finite coefficients at alpha = {a}, beta = {b}"
        )));
    }
    if !denominator_root_free(d1, d2) {
        return Err(Error::Construction { d1, d2 });
    }
    Ok(RationalApprox {
        n0,
        n1,
        d1,
        d2,
        regime,
    })
}

/// Evaluate the approximant at `x ≥ 0`.
pub fn eval_approx(approx: &RationalApprox, x: f64) -> f64 {
    if approx.regime == Regime::PureExponential {
        return (-x).exp();
    }
    if x > 1e150 {
        let u = 1.0 / x;
        return (approx.n0 * u * u + approx.n1 * u) / (u * u + approx.d1 * u + approx.d2);
    }
    (approx.n0 + approx.n1 * x) / (1.0 + approx.d1 * x + approx.d2 * x * x)
}
