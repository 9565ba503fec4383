//! Fixed-precision number rendering for reports and CSV exports.

/// `x` rounded to nine significant digits, printed in its shortest form.
pub fn sig9(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.8e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        return "0".into();
    }
    let mag = rounded.abs();
    if !(1e-4..1e15).contains(&mag) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}
