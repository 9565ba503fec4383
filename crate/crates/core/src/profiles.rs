//! Double-heterostructure models and their step discretization.
//!
//! A model has constant outer media `(V0, m0)` for `z <= z0` and `(V2, m2)`
//! for `z >= z1`, joined by graded inner profiles. Each [`ProfileFamily`]
//! fixes the inner profiles and the rule for the outer constants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One constant slab: potential and relative mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Medium {
    pub v: f64,
    pub m: f64,
}

/// A step in an explicit piecewise-constant profile: from `z` onwards the
/// medium is `(v, m)` until the next step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub z: f64,
    pub v: f64,
    pub m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ProfileFamily {
    /// `V = -mu^2/(1+z^2)`, `m = sigma^2/(1+z^2)`.
    SymmetricRational { mu: f64, sigma: f64 },
    /// Rational potential with a Gaussian mass pinned to the rational mass at `z0`.
    GaussianMass { mu: f64, sigma: f64 },
    GaussianMassDelta { mu: f64, sigma: f64, delta: f64 },
    /// Gaussian potential with the rational mass.
    GaussianPotential { mu: f64, sigma: f64 },
    GaussianPotentialDelta { mu: f64, sigma: f64, delta: f64 },
    /// `V = -V0M e^{sz}(2 - e^{sz})`, `m = m0M s^2 e^{-2sz}`.
    MorseLike { v0m: f64, m0m: f64, sigma: f64 },
    /// Morse potential with a tanh-interpolated mass between the Morse endpoint masses.
    HyperbolicMass { tau: f64, v0m: f64, m0m: f64, sigma: f64 },
    /// Two adjoining parabolic wells on `[b, c)` and `[c, d)`.
    ParabolicDouble { a: f64, b: f64, c: f64, d: f64, v0: f64, m0: f64, m1: f64 },
    /// `V = Vc e^{cz}`, `m = mu0 e^{cz}`, left barrier scaled by `lambda`.
    Exponential { vc: f64, mu0: f64, c: f64, lambda: f64 },
    /// `m = c z^2`, `V = (A/c)(1/z^4 + B/z^2)` for `z > 0`.
    SingularParabolicMass { a: f64, b: f64, c: f64 },
    ExplicitSteps { left: Medium, steps: Vec<Step> },
}

impl ProfileFamily {
    /// Families whose junction points are fixed by their own parameters.
    pub fn implied_span(&self) -> Option<(f64, f64)> {
        match self {
            ProfileFamily::ParabolicDouble { b, d, .. } => Some((*b, *d)),
            ProfileFamily::ExplicitSteps { steps, .. } => {
                let first = steps.first()?.z;
                let last = steps.last()?.z;
                Some((first, last))
            }
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProfileFamily::SymmetricRational { .. } => "symmetric-rational",
            ProfileFamily::GaussianMass { .. } => "gaussian-mass",
            ProfileFamily::GaussianMassDelta { .. } => "gaussian-mass-delta",
            ProfileFamily::GaussianPotential { .. } => "gaussian-potential",
            ProfileFamily::GaussianPotentialDelta { .. } => "gaussian-potential-delta",
            ProfileFamily::MorseLike { .. } => "morse-like",
            ProfileFamily::HyperbolicMass { .. } => "hyperbolic-mass",
            ProfileFamily::ParabolicDouble { .. } => "parabolic-double",
            ProfileFamily::Exponential { .. } => "exponential",
            ProfileFamily::SingularParabolicMass { .. } => "singular-parabolic-mass",
            ProfileFamily::ExplicitSteps { .. } => "explicit-steps",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeterostructureModel {
    pub family: ProfileFamily,
    pub z0: f64,
    pub z1: f64,
    pub v0: f64,
    pub m0: f64,
    pub v2: f64,
    pub m2: f64,
}

/// Piecewise-constant approximation: `regions[j]` lies left of `interfaces[j]`,
/// the last region lies right of the last interface.
#[derive(Debug, Clone, PartialEq)]
pub struct StepGrid {
    pub interfaces: Vec<f64>,
    pub regions: Vec<Medium>,
}

/// Build a model. `span` is `(z0, z1)`; it must be omitted for the families
/// whose junctions are implied by their parameters.
pub fn build_model(family: ProfileFamily, span: Option<(f64, f64)>) -> Result<HeterostructureModel> {
    validate_family(&family)?;
    let (z0, z1) = match (family.implied_span(), span) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidParameter(format!(
                "{} fixes its own junctions; do not pass z0/z1",
                family.label()
            )))
        }
        (Some(s), None) => s,
        (None, Some(s)) => s,
        (None, None) => {
            return Err(Error::InvalidParameter(format!("{} needs junctions z0 < z1", family.label())))
        }
    };
    let explicit = matches!(family, ProfileFamily::ExplicitSteps { .. });
    if !(z0.is_finite() && z1.is_finite()) || (!explicit && z0 >= z1) || z0 > z1 {
        return Err(Error::InvalidParameter(format!("junctions must satisfy z0 < z1, got {z0}, {z1}")));
    }
    if let ProfileFamily::SingularParabolicMass { .. } = family {
        if z0 <= 0.0 {
            return Err(Error::InvalidParameter(format!("singular mass profile needs z0 > 0, got {z0}")));
        }
    }

    let mut model = HeterostructureModel { family, z0, z1, v0: 0.0, m0: 1.0, v2: 0.0, m2: 1.0 };
    let (outer_left, outer_right) = match &model.family {
        ProfileFamily::SymmetricRational { .. }
        | ProfileFamily::GaussianMass { .. }
        | ProfileFamily::GaussianMassDelta { .. }
        | ProfileFamily::GaussianPotential { .. }
        | ProfileFamily::GaussianPotentialDelta { .. } => {
            let left = model.inner(z0);
            (left, left)
        }
        ProfileFamily::MorseLike { .. }
        | ProfileFamily::HyperbolicMass { .. }
        | ProfileFamily::SingularParabolicMass { .. } => (model.inner(z0), model.inner(z1)),
        ProfileFamily::Exponential { lambda, .. } => {
            let lambda = *lambda;
            let right = model.inner(z1);
            let left = model.inner(z0);
            (Medium { v: lambda * right.v, m: left.m }, right)
        }
        ProfileFamily::ParabolicDouble { v0, m0, .. } => {
            let outer = Medium { v: *v0, m: *m0 };
            (outer, outer)
        }
        ProfileFamily::ExplicitSteps { left, steps } => (*left, {
            let last = steps.last().expect("validated non-empty");
            Medium { v: last.v, m: last.m }
        }),
    };
    model.v0 = outer_left.v;
    model.m0 = outer_left.m;
    model.v2 = outer_right.v;
    model.m2 = outer_right.m;

    if !(model.m0 > 0.0 && model.m2 > 0.0) {
        return Err(Error::InvalidParameter("outer masses must be positive".into()));
    }
    if !explicit {
        for i in 0..=64 {
            let z = z0 + (z1 - z0) * i as f64 / 64.0;
            let m = model.inner(z).m;
            if !(m > 0.0 && m.is_finite()) {
                return Err(Error::InvalidParameter(format!("inner mass is not positive at z = {z}: {m}")));
            }
        }
    }
    Ok(model)
}

fn validate_family(family: &ProfileFamily) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidParameter(msg));
    match *family {
        ProfileFamily::SymmetricRational { mu, sigma }
        | ProfileFamily::GaussianMass { mu, sigma }
        | ProfileFamily::GaussianPotential { mu, sigma } => {
            if mu == 0.0 || sigma == 0.0 {
                return bad("mu and sigma must be non-zero".into());
            }
        }
        ProfileFamily::GaussianMassDelta { mu, sigma, delta }
        | ProfileFamily::GaussianPotentialDelta { mu, sigma, delta } => {
            if mu == 0.0 || sigma == 0.0 || delta <= 0.0 {
                return bad("mu, sigma must be non-zero and delta positive".into());
            }
        }
        ProfileFamily::MorseLike { m0m, sigma, .. } | ProfileFamily::HyperbolicMass { m0m, sigma, .. } => {
            if m0m <= 0.0 || sigma <= 0.0 {
                return bad("m0M and sigma must be positive".into());
            }
        }
        ProfileFamily::ParabolicDouble { a, b, c, d, m0, m1, .. } => {
            if !(a < c && b < c && c < d) || m0 <= 0.0 || m1 <= 0.0 {
                return bad("parabolic wells need a < c, b < c < d and positive masses".into());
            }
        }
        ProfileFamily::Exponential { vc, mu0, c, .. } => {
            if vc <= 0.0 || mu0 <= 0.0 || c == 0.0 {
                return bad("exponential profile needs Vc > 0, mu0 > 0, c != 0".into());
            }
        }
        ProfileFamily::SingularParabolicMass { a, b, c } => {
            if a <= 0.0 || b >= 0.0 || c <= 0.0 {
                return bad("singular profile needs A > 0, B < 0, c > 0".into());
            }
        }
        ProfileFamily::ExplicitSteps { left, ref steps } => {
            if steps.is_empty() {
                return bad("explicit profile needs at least one step".into());
            }
            if left.m <= 0.0 || steps.iter().any(|s| s.m <= 0.0) {
                return bad("explicit step masses must be positive".into());
            }
            if steps.windows(2).any(|w| w[1].z <= w[0].z) {
                return bad("explicit step positions must be strictly increasing".into());
            }
        }
    }
    Ok(())
}

fn rational(sigma2_or_mu2: f64, z: f64) -> f64 {
    sigma2_or_mu2 / (1.0 + z * z)
}

impl HeterostructureModel {
    /// `(V, m)` anywhere on the axis.
    pub fn eval(&self, z: f64) -> (f64, f64) {
        if z <= self.z0 {
            (self.v0, self.m0)
        } else if z >= self.z1 {
            (self.v2, self.m2)
        } else {
            let inner = self.inner(z);
            (inner.v, inner.m)
        }
    }

    /// The inner profiles, analytically continued outside `(z0, z1)`.
    pub fn inner(&self, z: f64) -> Medium {
        let z0 = self.z0;
        match self.family {
            ProfileFamily::SymmetricRational { mu, sigma } => Medium {
                v: -rational(mu * mu, z),
                m: rational(sigma * sigma, z),
            },
            ProfileFamily::GaussianMass { mu, sigma } => Medium {
                v: -rational(mu * mu, z),
                m: sigma * sigma * (-gauss_rate(z0) * z * z).exp(),
            },
            ProfileFamily::GaussianMassDelta { mu, sigma, delta } => Medium {
                v: -rational(mu * mu, z),
                m: sigma * sigma * pinned_gaussian(z0, delta, z),
            },
            ProfileFamily::GaussianPotential { mu, sigma } => Medium {
                v: -mu * mu * (-gauss_rate(z0) * z * z).exp(),
                m: rational(sigma * sigma, z),
            },
            ProfileFamily::GaussianPotentialDelta { mu, sigma, delta } => Medium {
                v: -mu * mu * pinned_gaussian(z0, delta, z),
                m: rational(sigma * sigma, z),
            },
            ProfileFamily::MorseLike { v0m, m0m, sigma } => Medium {
                v: morse_potential(v0m, sigma, z),
                m: m0m * sigma * sigma * (-2.0 * sigma * z).exp(),
            },
            ProfileFamily::HyperbolicMass { v0m, .. } => {
                let sigma = self.hyperbolic_sigma();
                Medium { v: morse_potential(v0m, sigma, z), m: self.mass_derivatives(z).0 }
            }
            ProfileFamily::ParabolicDouble { v0, .. } => {
                let (shape, _, _) = self.parabola(z);
                Medium { v: v0 * shape, m: self.mass_derivatives(z).0 }
            }
            ProfileFamily::Exponential { vc, mu0, c, .. } => {
                let e = (c * z).exp();
                Medium { v: vc * e, m: mu0 * e }
            }
            ProfileFamily::SingularParabolicMass { a, b, c } => {
                let z2 = z * z;
                Medium { v: a / c * (1.0 / (z2 * z2) + b / z2), m: c * z2 }
            }
            ProfileFamily::ExplicitSteps { left, ref steps } => {
                let mut medium = left;
                for s in steps {
                    if z >= s.z {
                        medium = Medium { v: s.v, m: s.m };
                    }
                }
                medium
            }
        }
    }

    /// `(m, m', m'')` of the inner mass profile.
    pub fn mass_derivatives(&self, z: f64) -> (f64, f64, f64) {
        let z0 = self.z0;
        match self.family {
            ProfileFamily::SymmetricRational { sigma, .. }
            | ProfileFamily::GaussianPotential { sigma, .. }
            | ProfileFamily::GaussianPotentialDelta { sigma, .. } => {
                let s2 = sigma * sigma;
                let q = 1.0 + z * z;
                (s2 / q, -2.0 * s2 * z / (q * q), s2 * (6.0 * z * z - 2.0) / (q * q * q))
            }
            ProfileFamily::GaussianMass { sigma, .. } => {
                let beta = gauss_rate(z0);
                let m = sigma * sigma * (-beta * z * z).exp();
                (m, -2.0 * beta * z * m, (4.0 * beta * beta * z * z - 2.0 * beta) * m)
            }
            ProfileFamily::GaussianMassDelta { sigma, delta, .. } => {
                let pre = sigma * sigma / (1.0 + z0 * z0);
                let g = z0 * z0 * (-delta * z * z).exp();
                (pre * (g + 1.0), pre * g * (-2.0 * delta * z), pre * g * (4.0 * delta * delta * z * z - 2.0 * delta))
            }
            ProfileFamily::MorseLike { m0m, sigma, .. } => {
                let m = m0m * sigma * sigma * (-2.0 * sigma * z).exp();
                (m, -2.0 * sigma * m, 4.0 * sigma * sigma * m)
            }
            ProfileFamily::HyperbolicMass { tau, m0m, sigma, .. } => {
                let z1 = self.z1;
                let scale = m0m * sigma * sigma;
                let span = (-2.0 * sigma * z1).exp() - (-2.0 * sigma * z0).exp();
                let t_end = (-tau * (z1 - z0)).tanh();
                let u = -tau * (z - z0);
                let th = u.tanh();
                let sech2 = 1.0 - th * th;
                let b = th / t_end;
                let db = -tau * sech2 / t_end;
                let d2b = -2.0 * tau * tau * sech2 * th / t_end;
                (
                    scale * (span * b + (-2.0 * sigma * z0).exp()),
                    scale * span * db,
                    scale * span * d2b,
                )
            }
            ProfileFamily::ParabolicDouble { m0, m1, .. } => {
                let (shape, d1, d2) = self.parabola(z);
                (m1 + (m0 - m1) * shape, (m0 - m1) * d1, (m0 - m1) * d2)
            }
            ProfileFamily::Exponential { mu0, c, .. } => {
                let m = mu0 * (c * z).exp();
                (m, c * m, c * c * m)
            }
            ProfileFamily::SingularParabolicMass { c, .. } => (c * z * z, 2.0 * c * z, 2.0 * c),
            ProfileFamily::ExplicitSteps { .. } => (self.inner(z).m, 0.0, 0.0),
        }
    }

    fn hyperbolic_sigma(&self) -> f64 {
        match self.family {
            ProfileFamily::HyperbolicMass { sigma, .. } => sigma,
            _ => unreachable!("only called for the hyperbolic family"),
        }
    }

    /// Shape function of the parabolic double well and its first two derivatives.
    fn parabola(&self, z: f64) -> (f64, f64, f64) {
        let ProfileFamily::ParabolicDouble { a, b, c, d, .. } = self.family else {
            unreachable!("only called for the parabolic family")
        };
        let (centre, half) = if z < b || z >= d {
            return (1.0, 0.0, 0.0);
        } else if z < c {
            ((c + a) / 2.0, (c - a) / 2.0)
        } else {
            ((d + c) / 2.0, (d - c) / 2.0)
        };
        let h2 = half * half;
        let x = z - centre;
        (x * x / h2, 2.0 * x / h2, 2.0 / h2)
    }

    /// Uniform midpoint discretization of `[z0, z1]` into `n` slabs.
    pub fn discretize(&self, n: usize) -> Result<StepGrid> {
        if n == 0 {
            return Err(Error::InvalidParameter("discretization needs n >= 1".into()));
        }
        if let ProfileFamily::ExplicitSteps { left, ref steps } = self.family {
            let mut regions = vec![left];
            regions.extend(steps.iter().map(|s| Medium { v: s.v, m: s.m }));
            return Ok(StepGrid { interfaces: steps.iter().map(|s| s.z).collect(), regions });
        }
        let h = (self.z1 - self.z0) / n as f64;
        let mut interfaces = Vec::with_capacity(n + 1);
        let mut regions = Vec::with_capacity(n + 2);
        regions.push(Medium { v: self.v0, m: self.m0 });
        for j in 0..=n {
            interfaces.push(if j == n { self.z1 } else { self.z0 + h * j as f64 });
        }
        for j in 0..n {
            let mid = self.z0 + h * (j as f64 + 0.5);
            regions.push(self.inner(mid));
        }
        regions.push(Medium { v: self.v2, m: self.m2 });
        Ok(StepGrid { interfaces, regions })
    }

    /// Lowest potential anywhere on the axis (sampled on the inner interval).
    pub fn potential_floor(&self, samples: usize) -> f64 {
        let mut lo = self.v0.min(self.v2);
        let n = samples.max(2);
        for i in 0..=n {
            let z = self.z0 + (self.z1 - self.z0) * i as f64 / n as f64;
            lo = lo.min(self.inner(z).v);
        }
        lo
    }

    /// Continuum threshold: bound states lie strictly below this.
    pub fn threshold(&self) -> f64 {
        self.v0.min(self.v2)
    }
}

fn gauss_rate(z0: f64) -> f64 {
    (1.0 + z0 * z0).ln() / (z0 * z0)
}

fn pinned_gaussian(z0: f64, delta: f64, z: f64) -> f64 {
    (z0 * z0 * (-delta * z * z).exp() + 1.0) / (1.0 + z0 * z0)
}

fn morse_potential(v0m: f64, sigma: f64, z: f64) -> f64 {
    let e = (sigma * z).exp();
    -v0m * e * (2.0 - e)
}

impl StepGrid {
    pub fn len(&self) -> usize {
        self.interfaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interfaces.is_empty()
    }

    pub fn shifted(&self, a: f64) -> StepGrid {
        StepGrid { interfaces: self.interfaces.iter().map(|z| z + a).collect(), regions: self.regions.clone() }
    }

    /// Reflect through the origin: `z -> -z` with the region order reversed.
    pub fn mirrored(&self) -> StepGrid {
        StepGrid {
            interfaces: self.interfaces.iter().rev().map(|z| -z).collect(),
            regions: self.regions.iter().rev().copied().collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.interfaces.is_empty() || self.regions.len() != self.interfaces.len() + 1 {
            return Err(Error::InvalidParameter("a step grid needs n >= 1 interfaces and n + 1 regions".into()));
        }
        if self.interfaces.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("interface positions must increase strictly".into()));
        }
        if self.regions.iter().any(|r| !(r.m > 0.0)) {
            return Err(Error::InvalidParameter("region masses must be positive".into()));
        }
        Ok(())
    }

    pub fn threshold(&self) -> f64 {
        let first = self.regions.first().map(|r| r.v).unwrap_or(f64::INFINITY);
        let last = self.regions.last().map(|r| r.v).unwrap_or(f64::INFINITY);
        first.min(last)
    }

    pub fn potential_floor(&self) -> f64 {
        self.regions.iter().map(|r| r.v).fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric() -> HeterostructureModel {
        build_model(ProfileFamily::SymmetricRational { mu: 3.0, sigma: 4.0 }, Some((-2.0, 2.0))).unwrap()
    }

    #[test]
    fn symmetric_outer_constants() {
        let m = symmetric();
        assert!((m.v0 + 1.8).abs() < 1e-15 && (m.v2 + 1.8).abs() < 1e-15);
        assert!((m.m0 - 3.2).abs() < 1e-15 && (m.m2 - 3.2).abs() < 1e-15);
        assert_eq!(m.eval(0.0), (-9.0, 16.0));
        assert_eq!(m.eval(-12.0), (m.v0, m.m0));
    }

    #[test]
    fn exponential_outer_constants() {
        let fam = ProfileFamily::Exponential { vc: 3.0, mu0: 0.5, c: 1.0, lambda: 1.0 };
        let m = build_model(fam, Some((-2.0, 2.0))).unwrap();
        let e2 = 3.0 * 2f64.exp();
        assert!((m.v2 - e2).abs() < 1e-12 && (m.v0 - e2).abs() < 1e-12);
        assert!((m.m0 - 0.5 * (-2f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn morse_values() {
        let fam = ProfileFamily::MorseLike { v0m: 10.0, m0m: 2.0, sigma: 2.0 };
        let m = build_model(fam, Some((-0.8, 0.8))).unwrap();
        let (v, mass) = m.eval(0.0);
        assert_eq!((v, mass), (-10.0, 8.0));
        assert_eq!(m.v2, m.inner(0.8).v);
    }

    #[test]
    fn midpoint_sampling() {
        let g = symmetric().discretize(2).unwrap();
        assert_eq!(g.interfaces, vec![-2.0, 0.0, 2.0]);
        assert_eq!(g.regions[1], Medium { v: -4.5, m: 8.0 });
        assert_eq!(g.regions[2], Medium { v: -4.5, m: 8.0 });
        assert_eq!(g.regions.len(), 4);
    }

    #[test]
    fn sampling_is_exact() {
        let m = symmetric();
        let n = 37;
        let g = m.discretize(n).unwrap();
        for j in 0..n {
            let mid = m.z0 + (m.z1 - m.z0) / n as f64 * (j as f64 + 0.5);
            assert_eq!(g.regions[j + 1], m.inner(mid));
        }
    }

    #[test]
    fn explicit_steps_round_trip() {
        let steps = vec![Step { z: 0.0, v: -1.0, m: 0.5 }, Step { z: 1.5, v: 0.3, m: 2.0 }];
        let fam = ProfileFamily::ExplicitSteps { left: Medium { v: 0.2, m: 1.0 }, steps: steps.clone() };
        let m = build_model(fam, None).unwrap();
        for n in [1, 7, 100] {
            let g = m.discretize(n).unwrap();
            assert_eq!(g.interfaces, vec![0.0, 1.5]);
            assert_eq!(g.regions, vec![Medium { v: 0.2, m: 1.0 }, Medium { v: -1.0, m: 0.5 }, Medium { v: 0.3, m: 2.0 }]);
        }
    }

    #[test]
    fn rejects_bad_models() {
        let fam = ProfileFamily::SymmetricRational { mu: 3.0, sigma: 4.0 };
        assert!(build_model(fam.clone(), Some((2.0, -2.0))).is_err());
        assert!(build_model(fam, None).is_err());
        let sing = ProfileFamily::SingularParabolicMass { a: 2.0, b: -10.0, c: 1.0 };
        assert!(build_model(sing.clone(), Some((-0.1, 4.0))).is_err());
        assert!(build_model(ProfileFamily::SingularParabolicMass { a: 2.0, b: 1.0, c: 1.0 }, Some((0.1, 4.0))).is_err());
        assert!(build_model(ProfileFamily::SymmetricRational { mu: 0.0, sigma: 4.0 }, Some((-2.0, 2.0))).is_err());
        let par = ProfileFamily::ParabolicDouble { a: 9.4, b: 11.0, c: 25.0, d: 31.0, v0: 0.3, m0: 0.096, m1: 0.0655 };
        assert!(build_model(par, Some((0.0, 1.0))).is_err());
    }

    #[test]
    fn symmetric_families_are_even() {
        let fams = [
            ProfileFamily::SymmetricRational { mu: 3.0, sigma: 4.0 },
            ProfileFamily::GaussianMass { mu: 3.0, sigma: 4.0 },
            ProfileFamily::GaussianMassDelta { mu: 3.0, sigma: 4.0, delta: 7.0 },
            ProfileFamily::GaussianPotential { mu: 3.0, sigma: 4.0 },
            ProfileFamily::GaussianPotentialDelta { mu: 3.0, sigma: 4.0, delta: 1.0 },
        ];
        for f in fams {
            let m = build_model(f, Some((-2.0, 2.0))).unwrap();
            for i in 0..50 {
                let z = -3.0 + 0.1237 * i as f64;
                assert_eq!(m.eval(z), m.eval(-z));
            }
        }
    }

    #[test]
    fn continuity_at_junctions() {
        let fams = [
            ProfileFamily::GaussianMass { mu: 3.0, sigma: 4.0 },
            ProfileFamily::GaussianMassDelta { mu: 3.0, sigma: 4.0, delta: 70.0 },
            ProfileFamily::GaussianPotential { mu: 3.0, sigma: 4.0 },
        ];
        for f in fams {
            let m = build_model(f, Some((-2.0, 2.0))).unwrap();
            let inner = m.inner(m.z0);
            assert!((inner.v - m.v0).abs() <= 1e-12 * m.v0.abs());
            assert!((inner.m - m.m0).abs() <= 1e-12 * m.m0);
        }
        // The Gaussian families are pinned to the rational profile values at z0.
        let g = build_model(ProfileFamily::GaussianMass { mu: 3.0, sigma: 4.0 }, Some((-2.0, 2.0))).unwrap();
        assert!((g.m0 - 3.2).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_mass_interpolates_morse_endpoints() {
        let fam = ProfileFamily::HyperbolicMass { tau: 2.75, v0m: 10.0, m0m: 2.0, sigma: 2.0 };
        let m = build_model(fam, Some((-0.8, 0.8))).unwrap();
        let morse = |z: f64| 2.0 * 4.0 * (-4.0 * z).exp();
        assert!((m.m0 - morse(-0.8)).abs() < 1e-12 * morse(-0.8));
        assert!((m.m2 - morse(0.8)).abs() < 1e-12 * morse(-0.8));
    }

    #[test]
    fn mass_derivatives_match_differences() {
        let fams: Vec<(ProfileFamily, (f64, f64))> = vec![
            (ProfileFamily::SymmetricRational { mu: 3.0, sigma: 4.0 }, (-2.0, 2.0)),
            (ProfileFamily::GaussianMass { mu: 3.0, sigma: 4.0 }, (-2.0, 2.0)),
            (ProfileFamily::GaussianMassDelta { mu: 3.0, sigma: 4.0, delta: 7.0 }, (-2.0, 2.0)),
            (ProfileFamily::MorseLike { v0m: 10.0, m0m: 2.0, sigma: 2.0 }, (-0.8, 0.8)),
            (ProfileFamily::HyperbolicMass { tau: 0.5, v0m: 10.0, m0m: 2.0, sigma: 2.0 }, (-0.8, 0.8)),
            (ProfileFamily::Exponential { vc: 3.0, mu0: 0.5, c: 1.0, lambda: 1.0 }, (-2.0, 2.0)),
            (ProfileFamily::SingularParabolicMass { a: 2.0, b: -10.0, c: 1.0 }, (0.1, 4.0)),
        ];
        for (f, span) in fams {
            let m = build_model(f, Some(span)).unwrap();
            for i in 1..10 {
                let z = span.0 + (span.1 - span.0) * i as f64 / 10.0;
                let h = 1e-4;
                let (_, d1, d2) = m.mass_derivatives(z);
                let mm = |x: f64| m.inner(x).m;
                let fd1 = (mm(z + h) - mm(z - h)) / (2.0 * h);
                let fd2 = (mm(z + h) - 2.0 * mm(z) + mm(z - h)) / (h * h);
                let scale = mm(z).abs() + d1.abs() + d2.abs();
                assert!((fd1 - d1).abs() < 1e-6 * scale, "{:?} z={z}", m.family.label());
                assert!((fd2 - d2).abs() < 1e-4 * scale, "{:?} z={z}", m.family.label());
            }
        }
    }

    #[test]
    fn parabolic_profile_pieces() {
        let par = ProfileFamily::ParabolicDouble { a: 9.4, b: 11.0, c: 25.0, d: 31.0, v0: 0.3, m0: 0.096, m1: 0.0655 };
        let m = build_model(par, None).unwrap();
        assert_eq!((m.z0, m.z1), (11.0, 31.0));
        let (v, mass) = m.eval(17.2);
        assert!(v.abs() < 1e-15 && (mass - 0.0655).abs() < 1e-15);
        let (v, mass) = m.eval(28.0);
        assert!(v.abs() < 1e-15 && (mass - 0.0655).abs() < 1e-15);
        assert_eq!(m.eval(40.0), (0.3, 0.096));
    }
}
