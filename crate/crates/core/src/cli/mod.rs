//! Command-line front end: configuration, table presets, unit conversion and
//! report formatting. The binary in `main.rs` is a thin clap layer over this.

pub mod config;
pub mod report;
pub mod tables;
pub mod units;

use std::path::Path;

use crate::analytic::{solve_transcendental, AnalyticProblem, Wavefunction};
use crate::closedform::{isotonic_levels, poschl_teller_spectrum, singular_levels};
use crate::error::{Error, Result};
use crate::multistep::{find_poles, scan, Method, ScanResult, SpectrumResult};
use crate::orderings::{GContext, OrderingSpec};
use crate::profiles::{HeterostructureModel, ProfileFamily};

pub use config::{Format, MethodKind, RunConfig};

/// Tolerance used for the determinant roots; bisection stops at machine
/// resolution anyway.
const ROOT_TOL: f64 = 1e-10;

/// Whole-axis levels of the families that have them, restricted to `[lo, hi]`.
pub fn closed_form_levels(model: &HeterostructureModel, ordering: OrderingSpec, lo: f64, hi: f64) -> Result<Vec<f64>> {
    let in_window = |e: &f64| *e >= lo && *e <= hi;
    match model.family {
        ProfileFamily::SymmetricRational { mu, sigma } => {
            Ok(poschl_teller_spectrum(mu, sigma, ordering)?.into_iter().filter(in_window).collect())
        }
        ProfileFamily::Exponential { vc, mu0, c, .. } => {
            let omega = c.abs() * (vc / mu0).sqrt();
            let g = ordering.g_parameter(GContext::ExponentialDh);
            let mut out = Vec::new();
            for n in 0.. {
                let e = isotonic_levels(omega, g, n)?;
                if e > hi {
                    break;
                }
                if e >= lo {
                    out.push(e);
                }
            }
            Ok(out)
        }
        ProfileFamily::SingularParabolicMass { a, b, c } => {
            let mut out = Vec::new();
            for n in 0.. {
                let e = singular_levels(a, b, c, ordering, n)?;
                if e > hi {
                    break;
                }
                if e >= lo {
                    out.push(e);
                }
                if n > 100_000 {
                    break;
                }
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedAnalytic {
            ordering: ordering.name(),
            reason: format!("no closed-form spectrum for the {} family", model.family.label()),
        }),
    }
}

/// Bound energies of `model` in the solver window `[lo, hi]`.
pub fn solve(
    model: &HeterostructureModel,
    ordering: OrderingSpec,
    method: Method,
    (lo, hi): (f64, f64),
    n: usize,
    tol: f64,
) -> Result<SpectrumResult> {
    match method {
        Method::MultiStepPoles => find_poles(&model.discretize(n)?, ordering, lo, hi, tol),
        Method::Transcendental => solve_transcendental(model, ordering, lo, hi, ROOT_TOL.min(tol)),
        Method::ClosedForm => {
            let mut result = SpectrumResult::empty(Method::ClosedForm, ordering, None, 0.0);
            result.energies = closed_form_levels(model, ordering, lo, hi)?;
            result.residuals = vec![0.0; result.energies.len()];
            Ok(result)
        }
    }
}

fn to_reported(cfg: &RunConfig, mut result: SpectrumResult) -> SpectrumResult {
    for e in &mut result.energies {
        *e = cfg.to_reported_energy(*e);
    }
    result
}

pub fn spectrum(cfg: &RunConfig) -> Result<SpectrumResult> {
    cfg.validate()?;
    let method = match cfg.method {
        MethodKind::Poles => Method::MultiStepPoles,
        MethodKind::Transcendental => Method::Transcendental,
        MethodKind::ClosedForm => Method::ClosedForm,
        MethodKind::Compare => {
            return Err(Error::Config("the compare method produces a comparison, use the compare command".into()))
        }
    };
    let window = if method == Method::ClosedForm {
        let threshold = cfg.model.threshold();
        match cfg.window {
            Some((a, b)) => (cfg.to_internal_energy(a), cfg.to_internal_energy(b).min(threshold)),
            None => (f64::NEG_INFINITY, threshold),
        }
    } else {
        cfg.internal_window()
    };
    if !(window.0 < window.1) {
        let mut result = SpectrumResult::empty(method, cfg.ordering, Some(cfg.n), cfg.tol);
        result.diagnostics.push(format!(
            "search window lies at or above the continuum threshold {}",
            crate::numfmt::sig9(cfg.to_reported_energy(cfg.model.threshold()))
        ));
        return Ok(result);
    }
    solve(&cfg.model, cfg.ordering, method, window, cfg.n, cfg.tol).map(|r| to_reported(cfg, r))
}

pub fn scan_reflection(cfg: &RunConfig) -> Result<ScanResult> {
    cfg.validate()?;
    let (lo, hi) = match cfg.window {
        Some((a, b)) => (cfg.to_internal_energy(a), cfg.to_internal_energy(b)),
        None => cfg.internal_window(),
    };
    let mut result = scan(&cfg.model.discretize(cfg.n)?, cfg.ordering, lo, hi, cfg.scan_points)?;
    for e in &mut result.energies {
        *e = cfg.to_reported_energy(*e);
    }
    Ok(result)
}

/// The `level`-th transcendental bound state, normalized to `R = 1`.
pub fn wavefunction(cfg: &RunConfig) -> Result<Wavefunction> {
    let problem = AnalyticProblem::new(&cfg.model, cfg.ordering)?;
    let spectrum = problem.solve(cfg.internal_window().0, cfg.internal_window().1, ROOT_TOL)?;
    let energy = *spectrum.energies.get(cfg.level).ok_or_else(|| {
        Error::NoBoundState(format!(
            "level {} requested but the window holds {} bound states",
            cfg.level,
            spectrum.energies.len()
        ))
    })?;
    problem.wavefunction(energy, 1.0)
}

pub fn wavefunction_csv(cfg: &RunConfig, psi: &Wavefunction) -> Result<String> {
    let (a, b) = cfg.z_range.unwrap_or_else(|| {
        let pad = 0.5 * (cfg.model.z1 - cfg.model.z0);
        (cfg.model.z0 - pad, cfg.model.z1 + pad)
    });
    psi.to_csv(a, b, cfg.wave_points)
}

/// Transcendental and pole spectra side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub ordering: OrderingSpec,
    pub transcendental: SpectrumResult,
    pub poles: SpectrumResult,
}

impl Comparison {
    /// Largest level-by-level gap over the common levels.
    pub fn max_discrepancy(&self) -> f64 {
        self.transcendental
            .energies
            .iter()
            .zip(&self.poles.energies)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

pub fn compare(cfg: &RunConfig) -> Result<Comparison> {
    cfg.validate()?;
    AnalyticProblem::new(&cfg.model, cfg.ordering)?;
    let window = cfg.internal_window();
    let transcendental = solve(&cfg.model, cfg.ordering, Method::Transcendental, window, cfg.n, cfg.tol)?;
    let poles = solve(&cfg.model, cfg.ordering, Method::MultiStepPoles, window, cfg.n, cfg.tol)?;
    Ok(Comparison {
        ordering: cfg.ordering,
        transcendental: to_reported(cfg, transcendental),
        poles: to_reported(cfg, poles),
    })
}

/// Write `text` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(Error::from),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Cap the global thread pool from `PDM_SPECTRA_THREADS`.
pub fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var("PDM_SPECTRA_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Config(format!("PDM_SPECTRA_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Config(format!("cannot size the thread pool: {e}")))
}
