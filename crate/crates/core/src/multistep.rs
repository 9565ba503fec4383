//! Reflection amplitude of a step grid and bound states as its poles.
//!
//! The amplitude is built right to left. With `r_j` the single-interface
//! factor between regions `j` and `j+1` and `w_{j+1}` the width of region
//! `j+1`,
//!
//! ```text
//! R_{n-1} = r_{n-1}
//! R_j     = (r_j + R_{j+1} e^{2 i k_{j+1} w_{j+1}}) / (1 + r_j R_{j+1} e^{2 i k_{j+1} w_{j+1}})
//! ```
//!
//! `R_0` is the amplitude of the reflected wave referred to the first
//! interface. Only widths enter, so shifting the whole grid changes nothing.
//!
//! Below both outer thresholds the same junction rules give a real secular
//! function: propagate the right-decaying solution leftwards and read off the
//! coefficient of the exponential that grows towards `-inf`. It vanishes
//! exactly where `R` has a pole and has no poles of its own, so it brackets
//! narrow resonances that a sampled `|R|^2` can step over.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orderings::{reflection_factor, OrderingSpec};
use crate::profiles::StepGrid;

/// Denominators smaller than this in the recursion are reported as a pole.
const POLE_DENOMINATOR: f64 = 1e-300;

pub fn wavenumber(m: f64, v: f64, e: f64) -> Complex64 {
    let d = m * (e - v);
    if d >= 0.0 {
        Complex64::new(d.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-d).sqrt())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Amplitude {
    Finite(Complex64),
    /// A recursion denominator vanished: `E` sits on a pole.
    Pole,
}

impl Amplitude {
    pub fn norm_sqr(&self) -> f64 {
        match self {
            Amplitude::Finite(r) => r.norm_sqr(),
            Amplitude::Pole => f64::INFINITY,
        }
    }

    /// The pole detector `1 / (1 + |R|^2)`.
    pub fn detector(&self) -> f64 {
        match self {
            Amplitude::Finite(r) => 1.0 / (1.0 + r.norm_sqr()),
            Amplitude::Pole => 0.0,
        }
    }

    pub fn finite(&self) -> Option<Complex64> {
        match self {
            Amplitude::Finite(r) => Some(*r),
            Amplitude::Pole => None,
        }
    }
}

/// A step grid with its junction coefficients resolved for one ordering.
#[derive(Debug, Clone)]
pub struct MatchedGrid {
    grid: StepGrid,
    ordering: OrderingSpec,
    coeffs: Vec<(f64, f64)>,
}

impl MatchedGrid {
    pub fn new(grid: &StepGrid, ordering: OrderingSpec) -> Result<Self> {
        grid.validate()?;
        let coeffs = grid
            .regions
            .windows(2)
            .map(|w| ordering.boundary_coeffs(w[0].m, w[1].m))
            .collect::<Result<Vec<_>>>()?;
        Ok(MatchedGrid { grid: grid.clone(), ordering, coeffs })
    }

    pub fn grid(&self) -> &StepGrid {
        &self.grid
    }

    pub fn ordering(&self) -> OrderingSpec {
        self.ordering
    }

    /// Nudge `E` off any region threshold, where `k = 0` degenerates the phases.
    fn admissible_energy(&self, e: f64) -> f64 {
        if self.grid.regions.iter().any(|r| r.m * (e - r.v) == 0.0) {
            e + 1e-12 * e.abs().max(1.0)
        } else {
            e
        }
    }

    pub fn reflection(&self, e: f64) -> Result<Amplitude> {
        let e = self.admissible_energy(e);
        let regions = &self.grid.regions;
        let z = &self.grid.interfaces;
        let n = z.len();
        let k: Vec<Complex64> = regions.iter().map(|r| wavenumber(r.m, r.v, e)).collect();
        let factor = |j: usize| {
            let (mu, rho) = self.coeffs[j];
            reflection_factor(mu, rho, k[j], k[j + 1]).map_err(|_| Error::SingularInterface { energy: e })
        };

        let mut big_r = factor(n - 1)?;
        for j in (0..n - 1).rev() {
            let r = factor(j)?;
            let w = z[j + 1] - z[j];
            let phase = (Complex64::i() * k[j + 1] * (2.0 * w)).exp();
            let t = big_r * phase;
            let den = Complex64::new(1.0, 0.0) + r * t;
            if den.norm() < POLE_DENOMINATOR {
                return Ok(Amplitude::Pole);
            }
            big_r = (r + t) / den;
        }
        Ok(Amplitude::Finite(big_r))
    }

    /// Coefficient of the left-growing exponential for the solution that
    /// decays to the right. Real for `E` below both outer thresholds, where
    /// its zeros are the bound states; `None` above a threshold.
    pub fn secular(&self, e: f64) -> Option<f64> {
        let e = self.admissible_energy(e);
        let regions = &self.grid.regions;
        let z = &self.grid.interfaces;
        let n = z.len();
        let first = regions[0];
        let last = regions[n];
        if e >= first.v || e >= last.v {
            return None;
        }
        let kappa_right = (last.m * (last.v - e)).sqrt();
        let (mut psi, mut dpsi) = (1.0, -kappa_right);
        for j in (0..n).rev() {
            let (mu, rho) = self.coeffs[j];
            psi *= mu;
            dpsi *= rho;
            if j == 0 {
                break;
            }
            let w = z[j] - z[j - 1];
            let region = regions[j];
            let q = region.m * (region.v - e);
            (psi, dpsi) = propagate_left(psi, dpsi, q, w);
            let scale = psi.abs().max(dpsi.abs() / (1.0 + q.abs().sqrt()));
            if scale > 0.0 && scale.is_finite() {
                psi /= scale;
                dpsi /= scale;
            }
        }
        let kappa_left = (first.m * (first.v - e)).sqrt();
        Some(kappa_left * psi - dpsi)
    }
}

/// Carry `(psi, psi')` from the right end of a slab of width `w` to its left
/// end, for `psi'' = q psi`.
fn propagate_left(psi: f64, dpsi: f64, q: f64, w: f64) -> (f64, f64) {
    if q > 0.0 {
        let kappa = q.sqrt();
        let x = kappa * w;
        if x > 40.0 {
            // cosh and sinh agree to machine precision; drop the common e^x / 2.
            let u = psi - dpsi / kappa;
            return (u, -kappa * u);
        }
        let (c, s) = (x.cosh(), x.sinh());
        (psi * c - dpsi * s / kappa, -psi * kappa * s + dpsi * c)
    } else if q < 0.0 {
        let k = (-q).sqrt();
        let x = k * w;
        let (s, c) = x.sin_cos();
        (psi * c - dpsi * s / k, psi * k * s + dpsi * c)
    } else {
        (psi - dpsi * w, dpsi)
    }
}

pub fn reflection_amplitude(grid: &StepGrid, ordering: OrderingSpec, e: f64) -> Result<Amplitude> {
    MatchedGrid::new(grid, ordering)?.reflection(e)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub energies: Vec<f64>,
    /// `|R|^2`; `f64::INFINITY` where the recursion reported a pole.
    pub values: Vec<f64>,
    pub grid_n: usize,
    pub ordering: String,
}

fn energy_grid(e_min: f64, e_max: f64, points: usize) -> Vec<f64> {
    let step = (e_max - e_min) / (points - 1) as f64;
    (0..points).map(|i| if i + 1 == points { e_max } else { e_min + step * i as f64 }).collect()
}

pub fn scan(grid: &StepGrid, ordering: OrderingSpec, e_min: f64, e_max: f64, points: usize) -> Result<ScanResult> {
    if !(e_min < e_max) || points < 2 {
        return Err(Error::InvalidParameter("scan needs E_min < E_max and at least two points".into()));
    }
    let matched = MatchedGrid::new(grid, ordering)?;
    let energies = energy_grid(e_min, e_max, points);
    let values = energies
        .par_iter()
        .map(|&e| matched.reflection(e).map(|a| a.norm_sqr()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult { energies, values, grid_n: grid.len().saturating_sub(1), ordering: ordering.name() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    MultiStepPoles,
    Transcendental,
    ClosedForm,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::MultiStepPoles => "poles",
            Method::Transcendental => "transcendental",
            Method::ClosedForm => "closedform",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub method: Method,
    pub ordering: String,
    pub energies: Vec<f64>,
    pub residuals: Vec<f64>,
    pub n: Option<usize>,
    pub tol: f64,
    pub diagnostics: Vec<String>,
}

impl SpectrumResult {
    pub fn empty(method: Method, ordering: OrderingSpec, n: Option<usize>, tol: f64) -> Self {
        SpectrumResult { method, ordering: ordering.name(), energies: vec![], residuals: vec![], n, tol, diagnostics: vec![] }
    }
}

/// Tunables of the pole search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSearch {
    pub scan_points: usize,
    pub max_iter: usize,
    /// Poles are accepted only where `1/(1+|R|^2)` falls below this.
    pub accept: f64,
}

impl Default for PoleSearch {
    fn default() -> Self {
        PoleSearch { scan_points: 4000, max_iter: 200, accept: 1e-4 }
    }
}

pub fn find_poles(grid: &StepGrid, ordering: OrderingSpec, e_min: f64, e_max: f64, tol: f64) -> Result<SpectrumResult> {
    find_poles_with(grid, ordering, e_min, e_max, tol, &PoleSearch::default())
}

struct Candidate {
    energy: f64,
    residual: f64,
}

pub fn find_poles_with(
    grid: &StepGrid,
    ordering: OrderingSpec,
    e_min: f64,
    e_max: f64,
    tol: f64,
    opts: &PoleSearch,
) -> Result<SpectrumResult> {
    if !(tol > 0.0) || !(e_min < e_max) || opts.scan_points < 3 {
        return Err(Error::InvalidParameter("pole search needs tol > 0, E_min < E_max and >= 3 scan points".into()));
    }
    let matched = MatchedGrid::new(grid, ordering)?;
    let n_slabs = grid.len().saturating_sub(1);
    let mut result = SpectrumResult::empty(Method::MultiStepPoles, ordering, Some(n_slabs), tol);

    let energies = energy_grid(e_min, e_max, opts.scan_points);
    let samples = energies
        .par_iter()
        .map(|&e| Ok((matched.reflection(e)?.detector(), matched.secular(e))))
        .collect::<Result<Vec<_>>>()?;
    let f = |e: f64| matched.reflection(e).map(|a| a.detector());

    let mut candidates: Vec<Candidate> = Vec::new();
    let spacing = energies[1] - energies[0];

    for i in 1..energies.len() - 1 {
        let (fl, fc, fr) = (samples[i - 1].0, samples[i].0, samples[i + 1].0);
        if fc <= fl && fc < fr {
            match golden_section(&f, energies[i - 1], energies[i + 1], tol, opts.max_iter)? {
                Some((energy, residual)) => candidates.push(Candidate { energy, residual }),
                None => result.diagnostics.push(format!(
                    "golden-section refinement near E = {:.9} did not converge in {} iterations",
                    energies[i], opts.max_iter
                )),
            }
        }
    }

    // Secular roots stand on their own: that function is continuous and only
    // ever rescaled by positive factors, so a sign change is a zero. Behind
    // thick barriers R itself cannot resolve the pole in double precision.
    let mut secular_roots: Vec<Candidate> = Vec::new();
    for i in 0..energies.len() - 1 {
        if let (Some(sl), Some(sr)) = (samples[i].1, samples[i + 1].1) {
            if sl == 0.0 || sl * sr < 0.0 {
                let root = bisect(|e| matched.secular(e).unwrap_or(f64::NAN), energies[i], energies[i + 1], sl, sr);
                let residual = f(root)?;
                if residual >= opts.accept && root >= e_min && root <= e_max {
                    result.diagnostics.push(format!(
                        "level at E = {root:.9} found by the secular function; R does not resolve this pole (f = {residual:.3e})"
                    ));
                }
                secular_roots.push(Candidate { energy: root, residual });
            }
        }
    }

    candidates.retain(|c| c.residual < opts.accept);
    candidates.extend(secular_roots);
    candidates.retain(|c| c.energy >= e_min && c.energy <= e_max);
    candidates.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let mut merged: Vec<Candidate> = Vec::new();
    for c in candidates {
        match merged.last_mut() {
            Some(last) if (c.energy - last.energy).abs() <= 0.5 * spacing => {
                if c.residual < last.residual {
                    *last = c;
                }
            }
            _ => merged.push(c),
        }
    }
    result.energies = merged.iter().map(|c| c.energy).collect();
    result.residuals = merged.iter().map(|c| c.residual).collect();
    Ok(result)
}

/// Minimize `f` on `[a, b]`; `None` if the iteration budget runs out first.
fn golden_section<F>(f: &F, mut a: f64, mut b: f64, tol: f64, max_iter: usize) -> Result<Option<(f64, f64)>>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    for _ in 0..max_iter {
        if (b - a).abs() < tol {
            let x = 0.5 * (a + b);
            let fx = f(x)?;
            let best = [(x, fx), (c, fc), (d, fd)].into_iter().min_by(|p, q| p.1.total_cmp(&q.1)).unwrap();
            return Ok(Some(best));
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    Ok(None)
}

/// Bisection to machine resolution on a sign-changing bracket.
pub(crate) fn bisect<F: Fn(f64) -> f64>(g: F, mut a: f64, mut b: f64, mut ga: f64, gb: f64) -> f64 {
    if ga == 0.0 {
        return a;
    }
    if gb == 0.0 {
        return b;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if !gm.is_finite() {
            break;
        }
        if (gm < 0.0) == (ga < 0.0) {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
