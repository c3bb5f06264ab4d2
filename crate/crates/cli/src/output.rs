//! Number formatting shared by the text, CSV and report emitters.

/// `x` with `digits` significant digits, fixed notation.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// CSV cell precision.
pub fn csv(x: f64) -> String {
    sig(x, 9)
}

/// Human-readable precision: the leading six decimals, truncated toward zero
/// so a printed value is a prefix of its decimal expansion.
pub fn text(x: f64) -> String {
    if !x.is_finite() {
        return sig(x, 6);
    }
    let scaled = x * 1e6;
    // guard against 2.0000009999999 style representation error
    let nearest = scaled.round();
    let kept = if (scaled - nearest).abs() < 1e-6 { nearest } else { scaled.trunc() };
    let kept = if kept == 0.0 { 0.0 } else { kept };
    format!("{:.6}", kept / 1e6)
}
