//! Transcendental-determinant method.
//!
//! For the four solvable families the inner Schrödinger equation
//!
//! ```text
//! -(psi'/m)' - 1/2 (nu m''/m^2 - eta m'^2/m^3) psi + (V - E) psi = 0
//! ```
//!
//! has two closed-form solutions `psi1`, `psi2`. Matching `P psi1 + Q psi2`
//! to `R e^{eta0 z}` on the left and `T e^{-eta2 z}` on the right gives a
//! homogeneous 2x2 system `X (P, Q)^T = 0`; bound states are the zeros of
//! `det X`.
//!
//! The determinant is divided by the (constant) Wronskian `(psi1 psi2' -
//! psi1' psi2)/m`. Both vanish together wherever the chosen basis stops
//! being independent, so the quotient keeps only the physical zeros.
//!
//! The module also carries the two substitutions that map the problem to a
//! constant-mass equation: `psi = m^{1/4} phi` with `rho = int sqrt(m) dz`,
//! and `psi = m^{1/2} Phi`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::closedform::rational_well_lambda;
use crate::error::{Error, Result};
use crate::multistep::{Method, SpectrumResult};
use crate::numfmt::sig9;
use crate::orderings::OrderingSpec;
use crate::profiles::{HeterostructureModel, ProfileFamily};
use crate::specialfn::{gauss_2f1, whittaker_m, whittaker_m_dy, whittaker_w, whittaker_w_dy};

/// Determinant scan density of [`solve_transcendental`].
pub const SCAN_POINTS: usize = 2000;
/// Largest `|D| / scale` at which an energy still counts as a root.
pub const ROOT_RESIDUAL: f64 = 1e-6;
/// Sign changes whose residual exceeds this are rounding noise, not roots.
pub const NOISE_RESIDUAL: f64 = 1e-3;
const IMAGINARY_RESIDUE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisFamily {
    Symmetric,
    Morse,
    Exponential,
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Symmetric { sigma: f64, lambda: f64, offset: f64 },
    Morse { sigma: f64, v0m: f64, m0m: f64, r: Complex64 },
    Exponential { y_scale: f64, c: f64, omega: f64, mu: Complex64 },
    Singular { c: f64, g_coef: f64, mu: Complex64 },
}

/// Two independent inner solutions of one solvable family, for any energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerBasis {
    kind: Kind,
}

fn complex_sqrt(x: f64) -> Complex64 {
    Complex64::new(x, 0.0).sqrt()
}

impl InnerBasis {
    /// `V = -mu^2/(1+z^2)`, `m = sigma^2/(1+z^2)`: hypergeometric functions of `-z^2`.
    pub fn symmetric(mu: f64, sigma: f64, nu: f64, eta: f64) -> Result<Self> {
        let lambda = rational_well_lambda(mu, sigma, nu, eta)?;
        if lambda * (lambda - 1.0) <= 0.0 {
            return Err(Error::NoBoundState(format!("lambda (lambda - 1) = {} <= 0", lambda * (lambda - 1.0))));
        }
        let offset = (0.25 + 2.0 * eta - 3.0 * nu) / (sigma * sigma);
        Ok(InnerBasis { kind: Kind::Symmetric { sigma, lambda, offset } })
    }

    /// Morse potential with the exponential mass: Whittaker functions of `e^{-sigma z}`.
    pub fn morse(v0m: f64, m0m: f64, sigma: f64, nu: f64, eta: f64) -> Result<Self> {
        if !(m0m > 0.0 && sigma != 0.0) {
            return Err(Error::InvalidParameter(format!("Morse basis needs m0M > 0 and sigma != 0, got {m0m}, {sigma}")));
        }
        let r = complex_sqrt(1.0 + m0m * v0m + 2.0 * eta - 2.0 * nu);
        Ok(InnerBasis { kind: Kind::Morse { sigma, v0m, m0m, r } })
    }

    /// `V = Vc e^{cz}`, `m = mu0 e^{cz}`: Whittaker functions of `e^{cz}`.
    pub fn exponential(vc: f64, mu0: f64, c: f64, nu: f64, eta: f64) -> Result<Self> {
        if !(vc > 0.0 && mu0 > 0.0 && c != 0.0) {
            return Err(Error::InvalidParameter(format!("exponential basis needs Vc, mu0 > 0 and c != 0, got {vc}, {mu0}, {c}")));
        }
        Ok(InnerBasis {
            kind: Kind::Exponential {
                y_scale: 2.0 * (vc * mu0).sqrt() / c,
                c,
                omega: c * (vc / mu0).sqrt(),
                mu: complex_sqrt((1.0 + 2.0 * eta - 2.0 * nu) / 4.0),
            },
        })
    }

    /// `m = c z^2`, `V = (A/c)(1/z^4 + B/z^2)`: Whittaker functions of `z^2`.
    pub fn singular(a: f64, b: f64, c: f64, nu: f64, eta: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::InvalidParameter(format!("singular basis needs c > 0, got {c}")));
        }
        let f = (5.0 + 8.0 * eta - 4.0 * nu + 4.0 * a) / 16.0;
        let g_coef = a * b / (2.0 * c.sqrt());
        if f <= 0.0 || g_coef >= 0.0 {
            return Err(Error::WellCondition(format!("need F > 0 and -G > 0, got F = {f}, G = {g_coef}")));
        }
        Ok(InnerBasis { kind: Kind::Singular { c, g_coef, mu: complex_sqrt(0.25 + f) } })
    }

    pub fn family(&self) -> BasisFamily {
        match self.kind {
            Kind::Symmetric { .. } => BasisFamily::Symmetric,
            Kind::Morse { .. } => BasisFamily::Morse,
            Kind::Exponential { .. } => BasisFamily::Exponential,
            Kind::Singular { .. } => BasisFamily::Singular,
        }
    }

    /// The Pöschl–Teller exponent, for the symmetric family only.
    pub fn lambda(&self) -> Option<f64> {
        match self.kind {
            Kind::Symmetric { lambda, .. } => Some(lambda),
            _ => None,
        }
    }

    /// Order `mu` of the Whittaker functions, where the family has one.
    pub fn whittaker_order(&self) -> Option<Complex64> {
        match self.kind {
            Kind::Morse { r, .. } => Some(r),
            Kind::Exponential { mu, .. } | Kind::Singular { mu, .. } => Some(mu),
            Kind::Symmetric { .. } => None,
        }
    }

    /// Argument of the Whittaker functions at `(z, E)`.
    pub fn whittaker_argument(&self, z: f64, e: f64) -> Option<f64> {
        match self.kind {
            Kind::Morse { sigma, m0m, .. } => Some(2.0 * (-e).sqrt() * m0m.sqrt() * (-sigma * z).exp()),
            Kind::Exponential { y_scale, c, .. } => Some(y_scale * (c * z).exp()),
            Kind::Singular { c, .. } => Some((-e).sqrt() * c.sqrt() * z * z),
            Kind::Symmetric { .. } => None,
        }
    }

    fn needs_negative_energy(&self, e: f64) -> Result<f64> {
        if e < 0.0 {
            Ok((-e).sqrt())
        } else {
            Err(Error::Domain(format!("{:?} basis is built for E < 0, got {e}", self.family())))
        }
    }

    /// `[psi1(z), psi2(z)]` at energy `e`.
    pub fn psi(&self, z: f64, e: f64) -> Result<[Complex64; 2]> {
        match self.kind {
            Kind::Symmetric { sigma, lambda, offset } => {
                let (a, b) = symmetric_parameters(sigma, lambda, offset, e);
                let q = 1.0 + z * z;
                let amp = (sigma * sigma / q).powf(0.25) * q.powf(lambda / 2.0);
                let half = Complex64::new(0.5, 0.0);
                let f1 = gauss_2f1(a, b, half, -z * z)?;
                let f2 = gauss_2f1(a + 0.5, b + 0.5, Complex64::new(1.5, 0.0), -z * z)?;
                Ok([f1 * amp, f2 * (amp * z)])
            }
            Kind::Morse { sigma, v0m, m0m, r } => {
                let se = self.needs_negative_energy(e)?;
                let q = Complex64::new(v0m * m0m.sqrt() / se, 0.0);
                let y = Complex64::new(2.0 * se * m0m.sqrt() * (-sigma * z).exp(), 0.0);
                let pre = m0m.powf(0.25) * sigma.abs().sqrt() * (-sigma * z / 2.0).exp();
                Ok([whittaker_m(q, r, y)? * pre, whittaker_w(q, r, y)? * pre])
            }
            Kind::Exponential { y_scale, c, omega, mu } => {
                let kappa = Complex64::new(e / (2.0 * omega), 0.0);
                let y = Complex64::new(y_scale * (c * z).exp(), 0.0);
                Ok([whittaker_m(kappa, mu, y)?, whittaker_w(kappa, mu, y)?])
            }
            Kind::Singular { c, g_coef, mu } => {
                let se = self.needs_negative_energy(e)?;
                if !(z > 0.0) {
                    return Err(Error::Domain(format!("singular basis lives on z > 0, got {z}")));
                }
                let kappa = Complex64::new(-g_coef / (2.0 * se), 0.0);
                let y = Complex64::new(se * c.sqrt() * z * z, 0.0);
                let pre = c.powf(0.25) * z.sqrt();
                Ok([whittaker_m(kappa, mu, y)? * pre, whittaker_w(kappa, mu, y)? * pre])
            }
        }
    }

    /// `[psi1'(z), psi2'(z)]` from the parameter-shift derivative identities
    /// of `2F1`, `M` and `U`.
    pub fn dpsi(&self, z: f64, e: f64) -> Result<[Complex64; 2]> {
        match self.kind {
            Kind::Symmetric { sigma, lambda, offset } => {
                let (a, b) = symmetric_parameters(sigma, lambda, offset, e);
                let q = 1.0 + z * z;
                let x = -z * z;
                let amp = (sigma * sigma / q).powf(0.25) * q.powf(lambda / 2.0);
                let d_amp = amp * (lambda - 0.5) * z / q;
                let f1 = gauss_2f1(a, b, Complex64::new(0.5, 0.0), x)?;
                let f1x = a * b * 2.0 * gauss_2f1(a + 1.0, b + 1.0, Complex64::new(1.5, 0.0), x)?;
                let (a2, b2) = (a + 0.5, b + 0.5);
                let f2 = gauss_2f1(a2, b2, Complex64::new(1.5, 0.0), x)?;
                let f2x = a2 * b2 / 1.5 * gauss_2f1(a2 + 1.0, b2 + 1.0, Complex64::new(2.5, 0.0), x)?;
                Ok([
                    f1 * d_amp + f1x * (amp * -2.0 * z),
                    f2 * (d_amp * z + amp) + f2x * (amp * z * -2.0 * z),
                ])
            }
            Kind::Morse { sigma, v0m, m0m, r } => {
                let se = self.needs_negative_energy(e)?;
                let q = Complex64::new(v0m * m0m.sqrt() / se, 0.0);
                let yv = 2.0 * se * m0m.sqrt() * (-sigma * z).exp();
                let y = Complex64::new(yv, 0.0);
                let pre = m0m.powf(0.25) * sigma.abs().sqrt() * (-sigma * z / 2.0).exp();
                let chain = |f: Complex64, df: Complex64| (f * (-sigma / 2.0) + df * (-sigma * yv)) * pre;
                Ok([
                    chain(whittaker_m(q, r, y)?, whittaker_m_dy(q, r, y)?),
                    chain(whittaker_w(q, r, y)?, whittaker_w_dy(q, r, y)?),
                ])
            }
            Kind::Exponential { y_scale, c, omega, mu } => {
                let kappa = Complex64::new(e / (2.0 * omega), 0.0);
                let yv = y_scale * (c * z).exp();
                let y = Complex64::new(yv, 0.0);
                Ok([whittaker_m_dy(kappa, mu, y)? * (c * yv), whittaker_w_dy(kappa, mu, y)? * (c * yv)])
            }
            Kind::Singular { c, g_coef, mu } => {
                let se = self.needs_negative_energy(e)?;
                if !(z > 0.0) {
                    return Err(Error::Domain(format!("singular basis lives on z > 0, got {z}")));
                }
                let kappa = Complex64::new(-g_coef / (2.0 * se), 0.0);
                let yv = se * c.sqrt() * z * z;
                let y = Complex64::new(yv, 0.0);
                let pre = c.powf(0.25) * z.sqrt();
                let chain = |f: Complex64, df: Complex64| (f / (2.0 * z) + df * (2.0 * yv / z)) * pre;
                Ok([
                    chain(whittaker_m(kappa, mu, y)?, whittaker_m_dy(kappa, mu, y)?),
                    chain(whittaker_w(kappa, mu, y)?, whittaker_w_dy(kappa, mu, y)?),
                ])
            }
        }
    }

    /// `[psi1'(z), psi2'(z)]` by one Richardson step on central differences,
    /// `h = 1e-5 |z| + 1e-7`.
    pub fn dpsi_numeric(&self, z: f64, e: f64) -> Result<[Complex64; 2]> {
        let h = 1e-5 * z.abs() + 1e-7;
        let wide = central(|t| self.psi(t, e), z, h)?;
        let narrow = central(|t| self.psi(t, e), z, h / 2.0)?;
        Ok([(narrow[0] * 4.0 - wide[0]) / 3.0, (narrow[1] * 4.0 - wide[1]) / 3.0])
    }

    pub fn psi1(&self, z: f64, e: f64) -> Result<Complex64> {
        Ok(self.psi(z, e)?[0])
    }

    pub fn psi2(&self, z: f64, e: f64) -> Result<Complex64> {
        Ok(self.psi(z, e)?[1])
    }

    pub fn dpsi1(&self, z: f64, e: f64) -> Result<Complex64> {
        Ok(self.dpsi(z, e)?[0])
    }

    pub fn dpsi2(&self, z: f64, e: f64) -> Result<Complex64> {
        Ok(self.dpsi(z, e)?[1])
    }
}

/// `a, b = (lambda +- i kappa sigma)/2` with `kappa^2 = E - offset`.
fn symmetric_parameters(sigma: f64, lambda: f64, offset: f64, e: f64) -> (Complex64, Complex64) {
    let k2 = e - offset;
    if k2 >= 0.0 {
        let ks = k2.sqrt() * sigma;
        (Complex64::new(lambda / 2.0, ks / 2.0), Complex64::new(lambda / 2.0, -ks / 2.0))
    } else {
        let ks = (-k2).sqrt() * sigma;
        (Complex64::new((lambda - ks) / 2.0, 0.0), Complex64::new((lambda + ks) / 2.0, 0.0))
    }
}

fn central<F>(f: F, z: f64, h: f64) -> Result<[Complex64; 2]>
where
    F: Fn(f64) -> Result<[Complex64; 2]>,
{
    let p = f(z + h)?;
    let m = f(z - h)?;
    Ok([(p[0] - m[0]) / (2.0 * h), (p[1] - m[1]) / (2.0 * h)])
}

/// The family's closed-form basis with `(nu, eta)` taken from `ordering`.
pub fn inner_basis(model: &HeterostructureModel, ordering: OrderingSpec) -> Result<InnerBasis> {
    let (nu, eta) = ordering.nu_eta();
    match model.family {
        ProfileFamily::SymmetricRational { mu, sigma } => InnerBasis::symmetric(mu, sigma, nu, eta),
        ProfileFamily::MorseLike { v0m, m0m, sigma } => InnerBasis::morse(v0m, m0m, sigma, nu, eta),
        ProfileFamily::Exponential { vc, mu0, c, .. } => InnerBasis::exponential(vc, mu0, c, nu, eta),
        ProfileFamily::SingularParabolicMass { a, b, c } => InnerBasis::singular(a, b, c, nu, eta),
        ref other => Err(Error::UnsupportedAnalytic {
            ordering: ordering.name(),
            reason: format!("the {} family has no closed-form inner solutions", other.label()),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PhiForm {
    Bdd,
    Zk,
}

fn phi_form(ordering: OrderingSpec) -> Result<PhiForm> {
    match ordering {
        OrderingSpec::Bdd => Ok(PhiForm::Bdd),
        OrderingSpec::VonRoos { alpha } if alpha == 0.0 => Ok(PhiForm::Bdd),
        OrderingSpec::Zk => Ok(PhiForm::Zk),
        OrderingSpec::VonRoos { alpha } if alpha == -0.5 => Ok(PhiForm::Zk),
        other => Err(Error::UnsupportedAnalytic {
            ordering: other.name(),
            reason: "junction coefficients are available for BDD and ZK only".into(),
        }),
    }
}

/// Outer decay constants `(eta0, eta2)`, which must be real and positive.
fn decay_constants(model: &HeterostructureModel, e: f64) -> Result<(f64, f64)> {
    if !(e < model.v0 && e < model.v2) {
        return Err(Error::Domain(format!(
            "E = {e} is not below both outer potentials ({}, {})",
            model.v0, model.v2
        )));
    }
    Ok(((model.m0 * (model.v0 - e)).sqrt(), (model.m2 * (model.v2 - e)).sqrt()))
}

/// `[[Phi11, Phi12], [Phi21, Phi22]]`: first index is the junction (z0, z1),
/// second the basis function.
pub fn phi_coefficients(
    model: &HeterostructureModel,
    ordering: OrderingSpec,
    basis: &InnerBasis,
    e: f64,
) -> Result<[[Complex64; 2]; 2]> {
    let form = phi_form(ordering)?;
    let (eta0, eta2) = decay_constants(model, e)?;
    let mut phi = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (row, (z, sign, m_out, decay)) in [(model.z0, -1.0, model.m0, eta0), (model.z1, 1.0, model.m2, eta2)]
        .into_iter()
        .enumerate()
    {
        let d = basis.dpsi(z, e)?;
        let (m, dm, _) = model.mass_derivatives(z);
        match form {
            PhiForm::Bdd => {
                for i in 0..2 {
                    phi[row][i] = d[i] * (sign * m_out / (decay * m));
                }
            }
            PhiForm::Zk => {
                let p = basis.psi(z, e)?;
                for i in 0..2 {
                    let reduced = d[i] / m.sqrt() - p[i] * (dm / (2.0 * m.powf(1.5)));
                    phi[row][i] = reduced * (sign * m.sqrt() / decay);
                }
            }
        }
    }
    Ok(phi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingMatrix {
    pub x: [[Complex64; 2]; 2],
    pub phi: [[Complex64; 2]; 2],
    /// `(psi1 psi2' - psi1' psi2)/m` at the middle of the inner interval.
    pub wronskian: Complex64,
}

impl MatchingMatrix {
    pub fn determinant(&self) -> Complex64 {
        self.x[0][0] * self.x[1][1] - self.x[0][1] * self.x[1][0]
    }

    /// Determinant divided by the Wronskian.
    pub fn normalized(&self) -> Complex64 {
        self.determinant() / self.wronskian
    }

    /// Hadamard bound of the normalized determinant: product of the row norms over `|W|`.
    pub fn scale(&self) -> f64 {
        let row = |r: &[Complex64; 2]| r[0].norm().hypot(r[1].norm());
        row(&self.x[0]) * row(&self.x[1]) / self.wronskian.norm()
    }
}

pub fn matching_matrix(
    model: &HeterostructureModel,
    ordering: OrderingSpec,
    basis: &InnerBasis,
    e: f64,
) -> Result<MatchingMatrix> {
    let phi = phi_coefficients(model, ordering, basis, e)?;
    let at0 = basis.psi(model.z0, e)?;
    let at1 = basis.psi(model.z1, e)?;
    let x = [
        [at0[0] + phi[0][0], at0[1] + phi[0][1]],
        [at1[0] + phi[1][0], at1[1] + phi[1][1]],
    ];
    let mid = 0.5 * (model.z0 + model.z1);
    let p = basis.psi(mid, e)?;
    let d = basis.dpsi(mid, e)?;
    let wronskian = (p[0] * d[1] - d[0] * p[1]) / model.mass_derivatives(mid).0;
    if wronskian.norm() == 0.0 || !wronskian.norm().is_finite() {
        return Err(Error::NumericalInconsistency(format!("basis Wronskian is {wronskian} at E = {e}")));
    }
    Ok(MatchingMatrix { x, phi, wronskian })
}

/// A model, an ordering and the matching basis, ready for repeated evaluation.
#[derive(Debug, Clone)]
pub struct AnalyticProblem {
    model: HeterostructureModel,
    ordering: OrderingSpec,
    basis: InnerBasis,
}

impl AnalyticProblem {
    pub fn new(model: &HeterostructureModel, ordering: OrderingSpec) -> Result<Self> {
        phi_form(ordering)?;
        let basis = inner_basis(model, ordering)?;
        Ok(AnalyticProblem { model: model.clone(), ordering, basis })
    }

    pub fn basis(&self) -> &InnerBasis {
        &self.basis
    }

    pub fn model(&self) -> &HeterostructureModel {
        &self.model
    }

    pub fn matrix(&self, e: f64) -> Result<MatchingMatrix> {
        matching_matrix(&self.model, self.ordering, &self.basis, e)
    }

    /// Real normalized determinant and its scale, after the imaginary-residue check.
    pub fn determinant(&self, e: f64) -> Result<(f64, f64)> {
        let mat = self.matrix(e)?;
        let d = mat.normalized();
        let scale = mat.scale();
        if d.im.abs() > IMAGINARY_RESIDUE * scale {
            return Err(Error::NumericalInconsistency(format!(
                "determinant at E = {e} has imaginary part {:e} against scale {scale:e}",
                d.im
            )));
        }
        Ok((d.re, scale))
    }

    /// Largest `|D|` over `samples` energies spread across the bound window
    /// from the potential floor up to the continuum threshold.
    pub fn window_scale(&self, samples: usize) -> Result<f64> {
        let lo = self.model.potential_floor(SCAN_POINTS);
        let hi = self.model.threshold();
        let n = samples.max(2);
        let largest = (0..n)
            .into_par_iter()
            .filter_map(|i| self.determinant(lo + (hi - lo) * (i as f64 + 0.5) / n as f64).ok())
            .map(|(d, _)| d.abs())
            .reduce(|| 0.0, f64::max);
        if largest > 0.0 {
            Ok(largest)
        } else {
            Err(Error::NumericalInconsistency("determinant could not be evaluated across the bound window".into()))
        }
    }

    pub fn solve(&self, e_min: f64, e_max: f64, tol: f64) -> Result<SpectrumResult> {
        if !(tol > 0.0) || !(e_min < e_max) {
            return Err(Error::InvalidParameter("transcendental search needs tol > 0 and E_min < E_max".into()));
        }
        let mut result = SpectrumResult::empty(Method::Transcendental, self.ordering, None, tol);
        let threshold = self.model.v0.min(self.model.v2);
        let mut e_max = e_max;
        if e_max >= threshold {
            e_max = threshold - 1e-9 * threshold.abs().max(1.0);
            result.diagnostics.push(format!("upper end of the window moved below the threshold to {}", sig9(e_max)));
        }
        if !(e_min < e_max) {
            return Ok(result);
        }
        let step = (e_max - e_min) / (SCAN_POINTS - 1) as f64;
        let energies: Vec<f64> = (0..SCAN_POINTS)
            .map(|i| if i + 1 == SCAN_POINTS { e_max } else { e_min + step * i as f64 })
            .collect();
        let values: Vec<std::result::Result<f64, String>> = energies
            .par_iter()
            .map(|&e| self.determinant(e).map(|(d, _)| d).map_err(|err| err.to_string()))
            .collect();
        let mut reported = 0;
        for (e, v) in energies.iter().zip(&values) {
            if let Err(msg) = v {
                if reported < 5 {
                    result.diagnostics.push(format!("skipped E = {}: {msg}", sig9(*e)));
                }
                reported += 1;
            }
        }
        if reported > 5 {
            result.diagnostics.push(format!("{} further scan points skipped", reported - 5));
        }
        for i in 0..SCAN_POINTS - 1 {
            let (Ok(da), Ok(db)) = (&values[i], &values[i + 1]) else { continue };
            if !(da.is_finite() && db.is_finite()) || !(*da == 0.0 || da * db < 0.0) {
                continue;
            }
            let (root, value) = self.bisect(energies[i], energies[i + 1], *da)?;
            let (_, scale) = self.determinant(root)?;
            if value.abs() > da.abs().max(db.abs()) {
                result.diagnostics.push(format!("sign change near E = {} is a pole of the determinant", sig9(root)));
                continue;
            }
            let residual = value.abs() / scale;
            if residual > NOISE_RESIDUAL {
                result.diagnostics.push(format!(
                    "sign change near E = {} rejected: residual {residual:.1e} is at the noise level",
                    sig9(root)
                ));
                continue;
            }
            result.energies.push(root);
            result.residuals.push(residual);
        }
        Ok(result)
    }

    /// Bisection down to adjacent floating-point numbers.
    fn bisect(&self, mut a: f64, mut b: f64, mut da: f64) -> Result<(f64, f64)> {
        if da == 0.0 {
            return Ok((a, 0.0));
        }
        loop {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let (dm, _) = self.determinant(m)?;
            if dm == 0.0 {
                return Ok((m, 0.0));
            }
            if (dm < 0.0) == (da < 0.0) {
                a = m;
                da = dm;
            } else {
                b = m;
            }
        }
        let m = 0.5 * (a + b);
        Ok((m, self.determinant(m)?.0))
    }

    pub fn wavefunction(&self, e: f64, normalization_r: f64) -> Result<Wavefunction> {
        let mat = self.matrix(e)?;
        let residual = mat.normalized().norm() / mat.scale();
        if !(residual < ROOT_RESIDUAL) {
            return Err(Error::NotARoot { energy: e, residual });
        }
        let (eta0, eta2) = decay_constants(&self.model, e)?;
        let (z0, z1) = (self.model.z0, self.model.z1);
        let at0 = self.basis.psi(z0, e)?;
        let at1 = self.basis.psi(z1, e)?;
        let phi = mat.phi;
        let left = Complex64::new(normalization_r * (eta0 * z0).exp(), 0.0);
        let denom = phi[0][0] * at0[1] - phi[0][1] * at0[0];
        let p = -(phi[0][1] + at0[1]) / denom * left;
        let q = (phi[0][0] + at0[0]) / denom * left;
        let t = (p * at1[0] + q * at1[1]) * (eta2 * z1).exp();
        Ok(Wavefunction {
            model: self.model.clone(),
            ordering: self.ordering,
            basis: self.basis,
            energy: e,
            r: normalization_r,
            p,
            q,
            t,
            eta0,
            eta2,
        })
    }
}

pub fn det_x(model: &HeterostructureModel, ordering: OrderingSpec, e: f64) -> Result<f64> {
    AnalyticProblem::new(model, ordering)?.determinant(e).map(|(d, _)| d)
}

/// Zeros of the normalized determinant in `[e_min, e_max]`.
pub fn solve_transcendental(
    model: &HeterostructureModel,
    ordering: OrderingSpec,
    e_min: f64,
    e_max: f64,
    tol: f64,
) -> Result<SpectrumResult> {
    AnalyticProblem::new(model, ordering)?.solve(e_min, e_max, tol)
}

pub fn wavefunction(
    model: &HeterostructureModel,
    ordering: OrderingSpec,
    e: f64,
    normalization_r: f64,
) -> Result<Wavefunction> {
    AnalyticProblem::new(model, ordering)?.wavefunction(e, normalization_r)
}

/// `R e^{eta0 z}` left of `z0`, `P psi1 + Q psi2` inside, `T e^{-eta2 z}` right of `z1`.
#[derive(Debug, Clone)]
pub struct Wavefunction {
    model: HeterostructureModel,
    ordering: OrderingSpec,
    basis: InnerBasis,
    pub energy: f64,
    pub r: f64,
    pub p: Complex64,
    pub q: Complex64,
    pub t: Complex64,
    pub eta0: f64,
    pub eta2: f64,
}

impl Wavefunction {
    pub fn eval(&self, z: f64) -> Result<Complex64> {
        if z <= self.model.z0 {
            Ok(Complex64::new(self.r * (self.eta0 * z).exp(), 0.0))
        } else if z >= self.model.z1 {
            Ok(self.t * (-self.eta2 * z).exp())
        } else {
            self.inner(z)
        }
    }

    fn inner(&self, z: f64) -> Result<Complex64> {
        let p = self.basis.psi(z, self.energy)?;
        Ok(self.p * p[0] + self.q * p[1])
    }

    fn inner_derivative(&self, z: f64) -> Result<Complex64> {
        let d = self.basis.dpsi(z, self.energy)?;
        Ok(self.p * d[0] + self.q * d[1])
    }

    /// Mismatch of the ordering's two junction conditions at `z0` and at `z1`:
    /// `[value z0, derivative z0, value z1, derivative z1]`. Values are measured
    /// against the larger of `|psi|` at the two junctions and derivatives against
    /// the larger flux, so a tail that has decayed below double resolution at one
    /// end is judged on the scale of the whole function.
    pub fn junction_residuals(&self) -> Result<[f64; 4]> {
        let form = phi_form(self.ordering)?;
        let sides = [
            (self.model.z0, self.model.m0, Complex64::new(self.r * (self.eta0 * self.model.z0).exp(), 0.0), self.eta0),
            (self.model.z1, self.model.m2, self.t * (-self.eta2 * self.model.z1).exp(), -self.eta2),
        ];
        let mut gaps = [(0.0, 0.0); 2];
        let (mut value_scale, mut flux_scale) = (f64::MIN_POSITIVE, f64::MIN_POSITIVE);
        for (k, (z, m_out, outer, rate)) in sides.into_iter().enumerate() {
            let (mu, _) = self.ordering.boundary_coeffs(m_out, self.model.mass_derivatives(z).0)?;
            let inner = self.inner(z)?;
            let d_inner = self.inner_derivative(z)?;
            let (m, dm, _) = self.model.mass_derivatives(z);
            let (lhs, rhs) = match form {
                PhiForm::Bdd => (outer * rate / m_out, d_inner / m),
                PhiForm::Zk => (outer * rate / m_out.sqrt(), d_inner / m.sqrt() - inner * (dm / (2.0 * m.powf(1.5)))),
            };
            gaps[k] = ((outer - inner * mu).norm(), (lhs - rhs).norm());
            value_scale = value_scale.max(inner.norm()).max(outer.norm());
            flux_scale = flux_scale.max(lhs.norm()).max(rhs.norm());
        }
        Ok([gaps[0].0 / value_scale, gaps[0].1 / flux_scale, gaps[1].0 / value_scale, gaps[1].1 / flux_scale])
    }

    /// `points` equally spaced samples on `[z_min, z_max]` as CSV.
    pub fn to_csv(&self, z_min: f64, z_max: f64, points: usize) -> Result<String> {
        if points < 2 || !(z_min < z_max) {
            return Err(Error::InvalidParameter("wavefunction export needs z_min < z_max and >= 2 points".into()));
        }
        let mut out = String::from("z,Re_psi,Im_psi\n");
        for i in 0..points {
            let z = z_min + (z_max - z_min) * i as f64 / (points - 1) as f64;
            let psi = self.eval(z)?;
            out.push_str(&format!("{},{},{}\n", sig9(z), sig9(psi.re), sig9(psi.im)));
        }
        Ok(out)
    }
}

const GAUSS5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
    (0.906_179_845_938_664, 0.236_926_885_056_189_1),
];

fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let panels = ((b - a).abs() / 0.02).ceil().max(1.0) as usize;
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let centre = a + h * (k as f64 + 0.5);
        for &(x, w) in &GAUSS5 {
            total += w * f(centre + 0.5 * h * x);
        }
    }
    0.5 * h * total
}

/// `psi = m^{1/4} phi`, `rho = int_{z0}^{z} sqrt(m)`: the isospectral constant-mass problem.
#[derive(Debug, Clone)]
pub struct QuarterPowerMap {
    model: HeterostructureModel,
    nu: f64,
    eta: f64,
}

pub fn transform_quarter_power(model: &HeterostructureModel, ordering: OrderingSpec) -> Result<QuarterPowerMap> {
    let (nu, eta) = ordering.nu_eta();
    Ok(QuarterPowerMap { model: model.clone(), nu, eta })
}

impl QuarterPowerMap {
    pub fn rho(&self, z: f64) -> f64 {
        integrate(|t| self.model.mass_derivatives(t).0.sqrt(), self.model.z0, z)
    }

    /// Inverse of [`Self::rho`] on the inner interval.
    pub fn z_of_rho(&self, rho: f64) -> Result<f64> {
        let (mut a, mut b) = (self.model.z0, self.model.z1);
        let top = self.rho(b);
        if !(0.0..=top).contains(&rho) {
            return Err(Error::Domain(format!("rho = {rho} outside [0, {top}]")));
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if self.rho(m) < rho {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    }

    /// Transformed potential at the point mapped from `z`.
    pub fn v_tilde_at(&self, z: f64) -> f64 {
        let (m, dm, d2m) = self.model.mass_derivatives(z);
        self.model.inner(z).v + 0.5 * (self.eta + 0.875) * dm * dm / (m * m * m) - 0.5 * (self.nu + 0.5) * d2m / (m * m)
    }

    pub fn v_tilde(&self, rho: f64) -> Result<f64> {
        Ok(self.v_tilde_at(self.z_of_rho(rho)?))
    }
}

/// How the constant `E*` separates from `V* - E*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EStarRule {
    /// No energy-independent split exists; `V* - E*` carries `(V - E) m` as a whole.
    Combined,
    /// Exponential family: a fixed `E*`, with the energy left inside `V*`.
    Exponential { e_star: f64 },
    /// Singular family: an isotonic oscillator with `omega^2 = -4 c E`.
    Singular { c: f64, g: f64, e_star: f64 },
}

impl EStarRule {
    /// `omega` of the singular family's oscillator at energy `e`.
    pub fn omega(&self, e: f64) -> Option<f64> {
        match *self {
            EStarRule::Singular { c, .. } if e < 0.0 => Some((-4.0 * c * e).sqrt()),
            _ => None,
        }
    }
}

/// `psi = m^{1/2} Phi`: `-Phi'' + (V* - E*) Phi = 0`.
#[derive(Debug, Clone)]
pub struct HalfPowerTransform {
    model: HeterostructureModel,
    nu: f64,
    eta: f64,
}

pub fn transform_half_power(model: &HeterostructureModel, ordering: OrderingSpec) -> Result<HalfPowerTransform> {
    let (nu, eta) = ordering.nu_eta();
    Ok(HalfPowerTransform { model: model.clone(), nu, eta })
}

impl HalfPowerTransform {
    pub fn v_star_minus_e_star(&self, z: f64, e: f64) -> f64 {
        let (m, dm, d2m) = self.model.mass_derivatives(z);
        let v = self.model.inner(z).v;
        0.25 * (dm / m).powi(2) * (3.0 + 2.0 * self.eta) - 0.5 * (d2m / m) * (1.0 + self.nu) + (v - e) * m
    }

    pub fn e_star_rule(&self) -> EStarRule {
        match self.model.family {
            ProfileFamily::Exponential { c, .. } => {
                EStarRule::Exponential { e_star: c * c * (-1.0 - 2.0 * self.eta + 2.0 * self.nu) / 4.0 }
            }
            ProfileFamily::SingularParabolicMass { a, b, c } => EStarRule::Singular {
                c,
                g: 2.0 * (2.0 + 2.0 * self.eta - self.nu) + 2.0 * a,
                e_star: -a * b,
            },
            _ => EStarRule::Combined,
        }
    }
}
