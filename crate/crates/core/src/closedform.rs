//! Closed-form spectra of the graded (whole-axis) limits.

use crate::error::{Error, Result};
use crate::orderings::OrderingSpec;

/// Pöschl–Teller exponent `lambda = 1/2 + sqrt(mu^2 sigma^2 + 2 eta - 4 nu)`
/// for arbitrary ordering constants. `2 eta - 4 nu = 4 alpha gamma`, so the
/// radicand can only go negative for asymmetric orderings with `alpha gamma < 0`.
pub fn rational_well_lambda(mu: f64, sigma: f64, nu: f64, eta: f64) -> Result<f64> {
    let radicand = mu * mu * sigma * sigma + 2.0 * eta - 4.0 * nu;
    if radicand < 0.0 || radicand.is_nan() {
        return Err(Error::NoBoundState(format!(
            "mu^2 sigma^2 + 2 eta - 4 nu = {radicand} < 0 (nu = {nu}, eta = {eta})"
        )));
    }
    Ok(0.5 + radicand.sqrt())
}

pub fn poschl_teller_lambda(mu: f64, sigma: f64, ordering: OrderingSpec) -> Result<f64> {
    let (nu, eta) = ordering.nu_eta();
    rational_well_lambda(mu, sigma, nu, eta)
}

/// Level `n` of the whole-axis rational-mass well, `0 <= n <= lambda - 1`.
pub fn poschl_teller_levels(mu: f64, sigma: f64, ordering: OrderingSpec, n: usize) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    let lambda = poschl_teller_lambda(mu, sigma, ordering)?;
    let nf = n as f64;
    if nf > lambda - 1.0 {
        return Err(Error::InvalidParameter(format!("level {n} exceeds lambda - 1 = {}", lambda - 1.0)));
    }
    let (nu, eta) = ordering.nu_eta();
    let s2 = sigma * sigma;
    Ok(-(nf - lambda + 1.0).powi(2) / s2 + (0.25 + 2.0 * eta - 3.0 * nu) / s2)
}

/// Every admissible Pöschl–Teller level, ground state first.
pub fn poschl_teller_spectrum(mu: f64, sigma: f64, ordering: OrderingSpec) -> Result<Vec<f64>> {
    let lambda = poschl_teller_lambda(mu, sigma, ordering)?;
    if lambda < 1.0 {
        return Ok(Vec::new());
    }
    (0..=((lambda - 1.0).floor() as usize)).map(|n| poschl_teller_levels(mu, sigma, ordering, n)).collect()
}

fn isotonic_shift(g: f64) -> Result<f64> {
    if g < -0.5 || g.is_nan() {
        return Err(Error::NonIsotonic { g });
    }
    Ok(0.5 * (1.0 + 2.0 * g).sqrt())
}

fn check_omega(omega: f64) -> Result<()> {
    if omega > 0.0 && omega.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("oscillator frequency must be positive, got {omega}")))
    }
}

/// Isotonic oscillator `omega^2 rho^2/4 + g/(2 rho^2)`: `E = omega (2n + 1 + d)`.
pub fn isotonic_levels(omega: f64, g: f64, n: usize) -> Result<f64> {
    check_omega(omega)?;
    let d = isotonic_shift(g)?;
    Ok(omega * (2.0 * n as f64 + 1.0 + d))
}

/// Shifted energy `E*` of the oscillator reached through the half-power substitution.
pub fn half_power_oscillator_estar(omega: f64, g: f64, n: usize) -> Result<f64> {
    check_omega(omega)?;
    let d = isotonic_shift(g)?;
    Ok(omega * (2.0 * n as f64 + 1.0 + d))
}

pub const GCOND: &str = "g > -1/2";
pub const ACOND: &str = "A > -5/4 - (2 eta - nu)";

/// Whole-axis levels of the singular parabolic-mass model.
pub fn singular_levels(a: f64, b: f64, c: f64, ordering: OrderingSpec, n: usize) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("mass scale c must be positive, got {c}")));
    }
    let (nu, eta) = ordering.nu_eta();
    let g = 2.0 * (2.0 + 2.0 * eta - nu) + 2.0 * a;
    if !(g > -0.5) {
        return Err(Error::ConditionViolation { inequality: GCOND, detail: format!("g = {g}") });
    }
    let a_min = -1.25 - (2.0 * eta - nu);
    if !(a > a_min) {
        return Err(Error::ConditionViolation { inequality: ACOND, detail: format!("A = {a}, bound {a_min}") });
    }
    let denom = 2.0 * n as f64 + 1.0 + 0.5 * (1.0 + 2.0 * g).sqrt();
    Ok(-(a * b).powi(2) / (4.0 * c * denom * denom))
}
