//! Degree-2 global Padé approximants of the generalized Mittag-Leffler
//! function `E_{α,β}(-x)` on `[0, ∞)` and of its inverse `-L_{α,β}(y)` on
//! `(0, 1/Γ(β)]`.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`]: Γ, 1/Γ, ln Γ, erfc and erfcx with explicit pole semantics.
//! * [`reference`]: a high-accuracy evaluator of `E_{α,β}(-x)` used as ground
//!   truth (Taylor series, double-word Taylor series, asymptotic series and
//!   closed forms).
//! * [`pade`]: construction and evaluation of the rational approximants.
//! * [`inverse`]: algebraic inversion of the approximants.
//! * [`fode`]: rational solutions of two Riemann-Liouville fractional ODEs.
//! * [`harness`]: error scans against the reference and CSV reporting.
//! * [`selftest`]: the invariant suite behind `mlpade selftest`.

pub mod double_word;
pub mod error;
pub mod fode;
pub mod format;
pub mod harness;
pub mod inverse;
pub mod pade;
pub mod params;
pub mod reference;
pub mod selftest;
pub mod special;

pub use error::{Error, ErrorKind, Result};
pub use pade::{build_approx, eval_approx, PadeCoeffs, RationalApprox};
pub use params::{classify, MLParams, Regime};
pub use reference::{ml_oracle, OracleConfig};
