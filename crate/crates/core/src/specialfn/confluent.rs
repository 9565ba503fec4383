//! Confluent hypergeometric functions.
//!
//! `M(a, b, y)` is summed from its power series (through Kummer's
//! transformation when `Re y < 0`). `U(a, b, y)` has two routes:
//!
//! * real parameters and `y > 0`: the integral
//!   `U = y^{-a} / Gamma(a) * int_0^inf e^{-s} s^{a-1} (1 + s/y)^{b-a-1} ds`
//!   evaluated by exp-sinh quadrature at `a + N >= 1`, then carried down to
//!   `a` with the stable contiguous recurrence
//!   `U(a-1) = (2a - b + y) U(a) - a (a - b + 1) U(a+1)`;
//! * otherwise the connection formula through two `M` series, with `b`
//!   nudged by `1e-9` off integers.
//!
//! The connection formula cancels catastrophically once `M ~ e^y` dwarfs
//! `U ~ y^{-a}`, and the integer-`b` nudge costs another nine digits, which
//! is why real arguments take the quadrature route.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::gamma::{gamma, ln_gamma, rgamma};
use super::SeriesControl;
use crate::error::{Error, Result};

const INTEGER_NUDGE: f64 = 1e-9;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Raw power series of `M(a, b, y)`, no transformation.
pub fn kummer_m_series(a: Complex64, b: Complex64, y: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if is_nonpositive_integer(b) {
        return Err(Error::Domain(format!("Kummer M undefined for b = {b}")));
    }
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small_run = 0;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        term *= (a + nf) / (b + nf) * y / (nf + 1.0);
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        let decaying = ((a + nf + 1.0) * y / ((b + nf + 1.0) * (nf + 2.0))).norm() < 1.0;
        if decaying && term.norm() <= ctl.rel_tol * sum.norm() {
            small_run += 1;
            if small_run >= 2 {
                return Ok(sum);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "Kummer M series",
        terms: ctl.max_terms,
        estimate: term.norm() / sum.norm().max(f64::MIN_POSITIVE),
    })
}

pub fn kummer_m_with(a: Complex64, b: Complex64, y: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if y.re < 0.0 {
        Ok(y.exp() * kummer_m_series(b - a, b, -y, ctl)?)
    } else {
        kummer_m_series(a, b, y, ctl)
    }
}

pub fn kummer_m(a: Complex64, b: Complex64, y: Complex64) -> Result<Complex64> {
    kummer_m_with(a, b, y, &SeriesControl::default())
}

/// `U` from the two-`M` connection formula, with `b` nudged off integers.
pub fn tricomi_u_series(a: Complex64, b: Complex64, y: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if y.norm() == 0.0 {
        return Err(Error::Domain("Tricomi U undefined at y = 0".into()));
    }
    let mut b = b;
    if (b.re - b.re.round()).abs() < INTEGER_NUDGE && b.im.abs() < INTEGER_NUDGE {
        b += INTEGER_NUDGE;
    }
    let one = Complex64::new(1.0, 0.0);
    let first = gamma(one - b) * rgamma(a + one - b) * kummer_m_with(a, b, y, ctl)?;
    let weight = rgamma(a);
    if weight.norm() == 0.0 {
        return Ok(first);
    }
    let second = gamma(b - one) * weight * y.powc(one - b) * kummer_m_with(a + one - b, 2.0 * one - b, y, ctl)?;
    Ok(first + second)
}

pub fn tricomi_u_with(a: Complex64, b: Complex64, y: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if y.norm() == 0.0 {
        return Err(Error::Domain("Tricomi U undefined at y = 0".into()));
    }
    if a.im == 0.0 && b.im == 0.0 && y.im == 0.0 && y.re > 0.0 {
        return tricomi_u_real(a.re, b.re, y.re).map(|u| Complex64::new(u, 0.0));
    }
    tricomi_u_series(a, b, y, ctl)
}

pub fn tricomi_u(a: Complex64, b: Complex64, y: Complex64) -> Result<Complex64> {
    tricomi_u_with(a, b, y, &SeriesControl::default())
}

fn tricomi_u_real(a: f64, b: f64, x: f64) -> Result<f64> {
    if a == 0.0 {
        return Ok(1.0);
    }
    let shift = if a >= 1.0 { 0 } else { (1.0 - a).ceil() as usize };
    let top = a + shift as f64;
    let mut upper = tricomi_u_integral(top, b, x)?;
    if shift == 0 {
        return Ok(upper);
    }
    let mut upper2 = tricomi_u_integral(top + 1.0, b, x)?;
    let mut level = top;
    for _ in 0..shift {
        let lower = (2.0 * level - b + x) * upper - level * (level - b + 1.0) * upper2;
        upper2 = upper;
        upper = lower;
        level -= 1.0;
    }
    Ok(upper)
}

/// Exp-sinh quadrature of the integral representation, valid for `a > 0`.
fn tricomi_u_integral(a: f64, b: f64, x: f64) -> Result<f64> {
    let exponent = |t: f64| {
        let s = (FRAC_PI_2 * t.sinh()).exp();
        if s == 0.0 || !s.is_finite() {
            return f64::NEG_INFINITY;
        }
        -s + a * s.ln() + (b - a - 1.0) * (s / x).ln_1p() + (FRAC_PI_2 * t.cosh()).ln()
    };
    const T_MAX: f64 = 5.0;
    let mut h = 0.25;
    let count = (T_MAX / h) as i64;
    let coarse: Vec<f64> = (-count..=count).map(|i| exponent(i as f64 * h)).collect();
    let peak = coarse.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !peak.is_finite() {
        return Err(Error::NumericalInconsistency(format!("U integrand vanished for a={a}, b={b}, y={x}")));
    }
    let mut sum: f64 = coarse.iter().map(|&l| (l - peak).exp()).sum();
    let mut previous = sum * h;
    for _ in 0..9 {
        let count = (T_MAX / h) as i64;
        let mut added = 0.0;
        for i in -count..count {
            added += (exponent((i as f64 + 0.5) * h) - peak).exp();
        }
        sum += added;
        h *= 0.5;
        let current = sum * h;
        if (current - previous).abs() <= 1e-14 * current {
            return Ok(((peak + current.ln()) - a * x.ln() - ln_gamma(Complex64::new(a, 0.0)).re).exp());
        }
        previous = current;
    }
    Err(Error::NonConvergence { what: "Tricomi U quadrature", terms: (2.0 * T_MAX / h) as usize, estimate: 0.0 })
}

fn whittaker_prefactor(mu: Complex64, y: Complex64) -> Complex64 {
    (-0.5 * y).exp() * y.powc(mu + 0.5)
}

/// `M_{kappa,mu}(y) = e^{-y/2} y^{mu+1/2} M(mu - kappa + 1/2, 1 + 2 mu, y)`.
pub fn whittaker_m(kappa: Complex64, mu: Complex64, y: Complex64) -> Result<Complex64> {
    Ok(whittaker_prefactor(mu, y) * kummer_m_with(mu - kappa + 0.5, 1.0 + 2.0 * mu, y, &whittaker_ctl())?)
}

/// `W_{kappa,mu}(y) = e^{-y/2} y^{mu+1/2} U(mu - kappa + 1/2, 1 + 2 mu, y)`.
pub fn whittaker_w(kappa: Complex64, mu: Complex64, y: Complex64) -> Result<Complex64> {
    Ok(whittaker_prefactor(mu, y) * tricomi_u_with(mu - kappa + 0.5, 1.0 + 2.0 * mu, y, &whittaker_ctl())?)
}

fn whittaker_ctl() -> SeriesControl {
    SeriesControl { rel_tol: 1e-16, ..SeriesControl::default() }
}

/// `d/dy M_{kappa,mu}(y)` from `M'(a, b, y) = (a/b) M(a+1, b+1, y)`.
pub fn whittaker_m_dy(kappa: Complex64, mu: Complex64, y: Complex64) -> Result<Complex64> {
    let ctl = whittaker_ctl();
    let (a, b) = (mu - kappa + 0.5, 1.0 + 2.0 * mu);
    let pre = whittaker_prefactor(mu, y);
    let value = kummer_m_with(a, b, y, &ctl)?;
    let slope = a / b * kummer_m_with(a + 1.0, b + 1.0, y, &ctl)?;
    Ok(pre * (value * ((mu + 0.5) / y - 0.5) + slope))
}

/// `d/dy W_{kappa,mu}(y)` from `U'(a, b, y) = -a U(a+1, b+1, y)`.
pub fn whittaker_w_dy(kappa: Complex64, mu: Complex64, y: Complex64) -> Result<Complex64> {
    let ctl = whittaker_ctl();
    let (a, b) = (mu - kappa + 0.5, 1.0 + 2.0 * mu);
    let pre = whittaker_prefactor(mu, y);
    let value = tricomi_u_with(a, b, y, &ctl)?;
    let slope = if a.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { -a * tricomi_u_with(a + 1.0, b + 1.0, y, &ctl)? };
    Ok(pre * (value * ((mu + 0.5) / y - 0.5) + slope))
}
