//! Physical units (nm, eV, electron masses) to the dimensionless units of the
//! solvers, where `hbar^2 / (2 m_e) = 1`.

use crate::error::{Error, Result};
use crate::profiles::{Medium, ProfileFamily, Step};

/// `hbar^2 / (2 m_e)` in eV nm^2.
pub const HBAR2_OVER_2ME: f64 = 0.038_099_8;

/// Length scale `L0` (nm) of a physical-unit model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitScale {
    pub length_nm: f64,
}

impl UnitScale {
    pub fn new(length_nm: f64) -> Result<Self> {
        if !(length_nm > 0.0 && length_nm.is_finite()) {
            return Err(Error::InvalidParameter(format!("length scale must be positive, got {length_nm}")));
        }
        Ok(UnitScale { length_nm })
    }

    /// Energy unit in eV.
    pub fn energy_ev(&self) -> f64 {
        HBAR2_OVER_2ME / (self.length_nm * self.length_nm)
    }

    pub fn energy_from_ev(&self, ev: f64) -> f64 {
        ev / self.energy_ev()
    }

    pub fn energy_to_ev(&self, e: f64) -> f64 {
        e * self.energy_ev()
    }

    pub fn energy_to_mev(&self, e: f64) -> f64 {
        1e3 * self.energy_to_ev(e)
    }

    pub fn length_from_nm(&self, nm: f64) -> f64 {
        nm / self.length_nm
    }

    pub fn length_to_nm(&self, z: f64) -> f64 {
        z * self.length_nm
    }
}

fn map_family(family: &ProfileFamily, energy: impl Fn(f64) -> f64, length: impl Fn(f64) -> f64) -> Result<ProfileFamily> {
    match family {
        &ProfileFamily::ParabolicDouble { a, b, c, d, v0, m0, m1 } => Ok(ProfileFamily::ParabolicDouble {
            a: length(a),
            b: length(b),
            c: length(c),
            d: length(d),
            v0: energy(v0),
            m0,
            m1,
        }),
        ProfileFamily::ExplicitSteps { left, steps } => Ok(ProfileFamily::ExplicitSteps {
            left: Medium { v: energy(left.v), m: left.m },
            steps: steps.iter().map(|s| Step { z: length(s.z), v: energy(s.v), m: s.m }).collect(),
        }),
        other => Err(Error::Config(format!(
            "physical units are only defined for parabolic-double and explicit-steps, not {}",
            other.label()
        ))),
    }
}

/// Convert a family given in nm / eV to dimensionless form. Relative masses are unchanged.
pub fn to_dimensionless(family: &ProfileFamily, scale: UnitScale) -> Result<ProfileFamily> {
    map_family(family, |e| scale.energy_from_ev(e), |z| scale.length_from_nm(z))
}

pub fn to_physical(family: &ProfileFamily, scale: UnitScale) -> Result<ProfileFamily> {
    map_family(family, |e| scale.energy_to_ev(e), |z| scale.length_to_nm(z))
}
