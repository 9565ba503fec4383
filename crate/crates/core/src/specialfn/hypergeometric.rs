use num_complex::Complex64;

use super::SeriesControl;
use crate::error::{Error, Result};

fn check_c(c: Complex64) -> Result<()> {
    if c.im == 0.0 && c.re <= 0.0 && c.re == c.re.round() {
        return Err(Error::Domain(format!("2F1 undefined for c = {c}")));
    }
    Ok(())
}

/// Defining series for `|x| < 1`. Also returns the sum of term magnitudes,
/// which measures the cancellation the sum went through.
fn series_with_mass(a: Complex64, b: Complex64, c: Complex64, x: f64, ctl: &SeriesControl) -> Result<(Complex64, f64)> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut mass = 1.0;
    let mut term = Complex64::new(1.0, 0.0);
    let mut small_run = 0;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        mass += term.norm();
        if term.norm() == 0.0 {
            return Ok((sum, mass));
        }
        if term.norm() <= ctl.rel_tol * sum.norm() && ((a + nf + 1.0) * (b + nf + 1.0) / (c + nf + 1.0)).norm() * x.abs() < nf + 2.0 {
            small_run += 1;
            if small_run >= 2 {
                return Ok((sum, mass));
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "2F1 series",
        terms: ctl.max_terms,
        estimate: term.norm() / sum.norm().max(f64::MIN_POSITIVE),
    })
}

/// The defining power series, `-1 < x <= 0`.
pub fn hyp2f1_series(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    check_c(c)?;
    if !(x > -1.0 && x <= 0.0) {
        return Err(Error::Domain(format!("direct 2F1 series needs -1 < x <= 0, got {x}")));
    }
    series_with_mass(a, b, c, x, &SeriesControl::default()).map(|(s, _)| s)
}

/// Pfaff's transformation `(1-x)^{-a} 2F1(a, c-b; c; x/(x-1))`.
pub fn hyp2f1_pfaff(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    check_c(c)?;
    if x > 0.0 {
        return Err(Error::Domain(format!("2F1 is only provided for x <= 0, got {x}")));
    }
    let w = x / (x - 1.0);
    let (s, _) = series_with_mass(a, c - b, c, w, &SeriesControl::default())?;
    Ok(Complex64::new(1.0 - x, 0.0).powc(-a) * s)
}

/// `2F1(a, b; c; x)` for `x <= 0`.
///
/// Candidates: the direct series (only for `x > -1`), and Pfaff's
/// transformation applied on either numerator parameter. The candidate whose
/// series lost the fewest digits to cancellation wins.
pub fn gauss_2f1_with(a: Complex64, b: Complex64, c: Complex64, x: f64, ctl: &SeriesControl) -> Result<Complex64> {
    check_c(c)?;
    if x > 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("2F1 is only provided for x <= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let w = x / (x - 1.0);
    let base = Complex64::new(1.0 - x, 0.0);
    let mut best: Option<(Complex64, f64)> = None;
    let mut consider = |value: Complex64, condition: f64| {
        if best.map_or(true, |(_, c0)| condition < c0) {
            best = Some((value, condition));
        }
    };
    if x > -1.0 {
        let (s, mass) = series_with_mass(a, b, c, x, ctl)?;
        consider(s, mass / s.norm());
    }
    let (s, mass) = series_with_mass(a, c - b, c, w, ctl)?;
    consider(base.powc(-a) * s, mass / s.norm());
    let (s, mass) = series_with_mass(c - a, b, c, w, ctl)?;
    consider(base.powc(-b) * s, mass / s.norm());
    Ok(best.expect("at least one candidate").0)
}

pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    gauss_2f1_with(a, b, c, x, &SeriesControl::default())
}
