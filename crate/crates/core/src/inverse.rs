//! Inverse approximants `-L_{α,β}(y)` on `(0, 1/Γ(β)]`.
//!
//! `y = A(X)` is rearranged into `d2 X² + (d1 - n1/y) X + (1 - n0/y) = 0`
//! and the nonnegative root is taken.

use crate::error::{Error, Result};
use crate::pade::{build_approx, RationalApprox};
use crate::params::MLParams;
use crate::special::rgamma;

/// Discriminants in `[-DISC_CLAMP, 0)` are rounded up to zero.
const DISC_CLAMP: f64 = 1e-12;

/// The domain `(lower, upper]` of the inverse; `lower` is excluded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseDomain {
    pub lower: f64,
    pub upper: f64,
}

impl InverseDomain {
    pub fn contains(&self, y: f64) -> bool {
        y > self.lower && y <= self.upper
    }
}

pub fn inv_domain(params: &MLParams) -> InverseDomain {
    InverseDomain {
        lower: 0.0,
        upper: rgamma(params.beta()),
    }
}

/// `-L_{α,β}(y)` from the degree-2 approximant.
pub fn inv_pade(params: &MLParams, y: f64) -> Result<f64> {
    invert(&build_approx(params)?, y)
}

/// Solve `A(X) = y` for `X ≥ 0`.
pub fn invert(approx: &RationalApprox, y: f64) -> Result<f64> {
    let n0 = approx.n0();
    if !(y > 0.0 && y <= n0) {
        return Err(Error::Domain(format!("y = {y} is outside (0, {n0}]")));
    }
    if y == n0 {
        return Ok(0.0);
    }
    if approx.is_exact() {
        return Ok(-y.ln());
    }

    let a = approx.d2();
    let b = approx.d1() - approx.n1() / y;
    // 1 - n0/y, with the subtraction exact when y is close to n0
    let c = (y - n0) / y;
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc < -DISC_CLAMP {
            return Err(Error::Branch {
                y,
                reason: format!("negative discriminant {disc:e}"),
            });
        }
        disc = 0.0;
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return Ok(0.0);
    }

    let (r1, r2) = (q / a, c / q);
    match (r1 >= 0.0, r2 >= 0.0) {
        (true, false) => Ok(r1),
        (false, true) => Ok(r2),
        (true, true) if r1 == r2 => Ok(r1),
        (true, true) => Err(Error::Branch {
            y,
            reason: format!("both roots {r1} and {r2} are nonnegative"),
        }),
        (false, false) => Err(Error::Branch {
            y,
            reason: format!("no nonnegative root ({r1}, {r2})"),
        }),
    }
}
