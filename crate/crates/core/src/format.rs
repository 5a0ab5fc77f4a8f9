//! Deterministic shortest-round-trip decimal formatting.

/// Format `v` with the fewest digits that parse back to the same value.
///
/// Plain decimal notation is used for `1e-5 ≤ |v| < 1e16` and zero,
/// scientific notation (`1.5e-7`) otherwise. Negative zero prints as `0`.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if !v.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}
