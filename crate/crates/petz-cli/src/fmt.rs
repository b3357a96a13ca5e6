//! Number formatting: 15 significant digits for single-shot printing,
//! 17 significant digits (round-trip exact) for report fields.

/// Fixed-point with 15 significant digits, matching what a desk calculator
/// would show; zero prints as `0`.
pub fn sig15(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (14 - exponent).clamp(0, 60) as usize;
    format!("{v:.decimals$}")
}

/// Scientific notation with a 17-digit mantissa; parses back to the exact
/// same double.
pub fn exact17(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    format!("{v:.16e}")
}
