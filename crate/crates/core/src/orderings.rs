//! Kinetic-energy operator orderings.
//!
//! An ordering fixes how the position-dependent mass is split around the two
//! momentum operators. Two derived constants, `nu = alpha + gamma` and
//! `eta = 2 (alpha + gamma + alpha gamma)`, enter the effective ordering
//! potential; the junction coefficients `(mu, rho)` fix how the wavefunction
//! and its derivative jump across an abrupt step:
//!
//! ```text
//! psi(z-) = mu * psi(z+),    psi'(z-) = rho * psi'(z+)
//! ```

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderingSpec {
    /// Ben Daniel-Duke, alpha = gamma = 0.
    Bdd,
    /// Zhu-Kroemer, alpha = gamma = -1/2.
    Zk,
    /// Li-Kuhn, beta = gamma = -1/2.
    Lk,
    /// Gora-Williams, alpha = -1, beta = gamma = 0.
    Gw,
    /// The asymmetric ordering with alpha = 0, gamma = -2/3.
    Tl,
    /// Symmetric von Roos family: gamma = alpha, beta = -1 - 2 alpha.
    VonRoos { alpha: f64 },
}

/// Where the inverse-square coefficient `g` is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GContext {
    ExponentialDh,
    SingularDh { a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsotonicClass {
    NonIsotonic,
    IsotonicNegativeG,
    IsotonicNonnegativeG,
}

impl OrderingSpec {
    pub fn nu_eta(&self) -> (f64, f64) {
        match *self {
            OrderingSpec::Bdd => (0.0, 0.0),
            OrderingSpec::Zk => (-1.0, -1.5),
            OrderingSpec::Lk => (-0.5, -1.0),
            OrderingSpec::Gw => (-1.0, -2.0),
            OrderingSpec::Tl => (-2.0 / 3.0, -4.0 / 3.0),
            OrderingSpec::VonRoos { alpha } => (2.0 * alpha, 2.0 * (2.0 * alpha + alpha * alpha)),
        }
    }

    pub fn can_match(&self) -> bool {
        !matches!(self, OrderingSpec::Lk | OrderingSpec::Gw)
    }

    pub fn name(&self) -> String {
        match *self {
            OrderingSpec::Bdd => "bdd".into(),
            OrderingSpec::Zk => "zk".into(),
            OrderingSpec::Lk => "lk".into(),
            OrderingSpec::Gw => "gw".into(),
            OrderingSpec::Tl => "tl".into(),
            OrderingSpec::VonRoos { alpha } => format!("vr:{alpha}"),
        }
    }

    /// Junction coefficients for a step from mass `m_left` to `m_right`.
    pub fn boundary_coeffs(&self, m_left: f64, m_right: f64) -> Result<(f64, f64)> {
        if !(m_left > 0.0 && m_right > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "masses must be positive, got {m_left} and {m_right}"
            )));
        }
        match *self {
            OrderingSpec::Bdd => Ok(von_roos_coeffs(0.0, m_left, m_right)),
            OrderingSpec::Zk => Ok(von_roos_coeffs(-0.5, m_left, m_right)),
            OrderingSpec::VonRoos { alpha } => Ok(von_roos_coeffs(alpha, m_left, m_right)),
            OrderingSpec::Tl => Ok((
                (2.0 * m_left + m_right) / (m_left + 2.0 * m_right),
                (5.0 * m_left + m_right) / (m_left + 5.0 * m_right),
            )),
            OrderingSpec::Lk | OrderingSpec::Gw => Err(Error::UnsupportedMatching { ordering: self.name() }),
        }
    }

    /// Single-interface reflection factor `(k_l mu - k_r rho) / (k_l mu + k_r rho)`.
    pub fn step_reflection_factor(
        &self,
        k_left: Complex64,
        k_right: Complex64,
        m_left: f64,
        m_right: f64,
    ) -> Result<Complex64> {
        let (mu, rho) = self.boundary_coeffs(m_left, m_right)?;
        reflection_factor(mu, rho, k_left, k_right)
    }

    pub fn g_parameter(&self, context: GContext) -> f64 {
        let (nu, eta) = self.nu_eta();
        match context {
            GContext::ExponentialDh => (3.0 + 8.0 * eta - 8.0 * nu) / 2.0,
            GContext::SingularDh { a } => 2.0 * (2.0 + 2.0 * eta - nu) + 2.0 * a,
        }
    }
}

pub(crate) fn reflection_factor(mu: f64, rho: f64, k_left: Complex64, k_right: Complex64) -> Result<Complex64> {
    let num = k_left * mu - k_right * rho;
    let den = k_left * mu + k_right * rho;
    if den.norm() == 0.0 {
        return Err(Error::SingularInterface { energy: f64::NAN });
    }
    Ok(num / den)
}

fn von_roos_coeffs(alpha: f64, ml: f64, mr: f64) -> (f64, f64) {
    let beta = -1.0 - 2.0 * alpha;
    let p = alpha + 1.0;
    let q = alpha + beta + 1.0;
    let mu = (mr.powf(p) * ml.powf(q) + ml) / (ml.powf(p) * mr.powf(q) + mr);
    let rho = (ml.powf(p) * mr.powf(q) + ml) / (mr.powf(p) * ml.powf(q) + mr);
    (mu, rho)
}

pub fn classify_isotonic(g: f64) -> IsotonicClass {
    if g < -0.5 {
        IsotonicClass::NonIsotonic
    } else if g < 0.0 {
        IsotonicClass::IsotonicNegativeG
    } else {
        IsotonicClass::IsotonicNonnegativeG
    }
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for OrderingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "bdd" => Ok(OrderingSpec::Bdd),
            "zk" => Ok(OrderingSpec::Zk),
            "lk" => Ok(OrderingSpec::Lk),
            "gw" => Ok(OrderingSpec::Gw),
            "tl" => Ok(OrderingSpec::Tl),
            other => match other.strip_prefix("vr:") {
                Some(alpha) => alpha
                    .parse::<f64>()
                    .ok()
                    .filter(|a| a.is_finite())
                    .map(|alpha| OrderingSpec::VonRoos { alpha })
                    .ok_or_else(|| Error::Config(format!("bad von Roos parameter in '{s}'"))),
                None => Err(Error::Config(format!(
                    "unknown ordering '{s}' (expected bdd, zk, lk, gw, tl or vr:<alpha>)"
                ))),
            },
        }
    }
}
