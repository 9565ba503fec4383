//! Run configuration: a TOML file with `[model]`, `[ordering]`, `[method]`
//! and `[output]` sections, plus command-line overrides.
//!
//! ```toml
//! [model]
//! family = "symmetric-rational"
//! mu = 3.0
//! sigma = 4.0
//! z0 = -2.0
//! z1 = 2.0
//!
//! [ordering]
//! name = "bdd"
//!
//! [method]
//! kind = "poles"          # poles | transcendental | closedform | compare
//! emin = -9.0
//! emax = -1.8
//! n = 2000
//! tol = 1e-6
//!
//! [output]
//! spectrum = "spectrum.json"
//! format = "json"         # json | csv | md
//! ```
//!
//! A `length_scale_nm` key in `[model]` switches the model to physical
//! units: lengths in nm, energies in eV, and reported energies in meV.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use super::units::{to_dimensionless, UnitScale};
use crate::analytic::AnalyticProblem;
use crate::error::{Error, Result};
use crate::orderings::OrderingSpec;
use crate::profiles::{build_model, HeterostructureModel, ProfileFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodKind {
    Poles,
    Transcendental,
    ClosedForm,
    Compare,
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "poles" => Ok(MethodKind::Poles),
            "transcendental" => Ok(MethodKind::Transcendental),
            "closedform" | "closed-form" => Ok(MethodKind::ClosedForm),
            "compare" => Ok(MethodKind::Compare),
            other => Err(Error::Config(format!(
                "unknown method '{other}' (expected poles, transcendental, closedform or compare)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(Error::Config(format!("unknown format '{other}' (expected json, csv or md)"))),
        }
    }
}

#[derive(Debug, Deserialize)]
struct ModelSection {
    #[serde(flatten)]
    family: ProfileFamily,
    z0: Option<f64>,
    z1: Option<f64>,
    length_scale_nm: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderingSection {
    name: String,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MethodSection {
    kind: Option<String>,
    emin: Option<f64>,
    emax: Option<f64>,
    n: Option<usize>,
    tol: Option<f64>,
    points: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    spectrum: Option<PathBuf>,
    scan: Option<PathBuf>,
    wavefunction: Option<PathBuf>,
    format: Option<String>,
    level: Option<usize>,
    zmin: Option<f64>,
    zmax: Option<f64>,
    points: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    model: ModelSection,
    ordering: OrderingSection,
    #[serde(default)]
    method: MethodSection,
    #[serde(default)]
    output: OutputSection,
}

/// Everything a run needs, validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: HeterostructureModel,
    /// Present when the model was given in physical units.
    pub units: Option<UnitScale>,
    pub ordering: OrderingSpec,
    pub method: MethodKind,
    /// Search window in reporting units; `None` means the full bound window.
    pub window: Option<(f64, f64)>,
    pub n: usize,
    pub tol: f64,
    pub scan_points: usize,
    pub format: Format,
    pub spectrum_out: Option<PathBuf>,
    pub scan_out: Option<PathBuf>,
    pub wavefunction_out: Option<PathBuf>,
    pub level: usize,
    pub z_range: Option<(f64, f64)>,
    pub wave_points: usize,
}

pub const DEFAULT_N: usize = 2000;
/// Slab count used when reproducing the published tables.
pub const TABLE_N: usize = 4000;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_SCAN_POINTS: usize = 4000;
pub const DEFAULT_WAVE_POINTS: usize = 401;

impl RunConfig {
    /// A configuration with defaults for everything but the model and ordering.
    pub fn new(model: HeterostructureModel, units: Option<UnitScale>, ordering: OrderingSpec, method: MethodKind) -> Self {
        RunConfig {
            model,
            units,
            ordering,
            method,
            window: None,
            n: DEFAULT_N,
            tol: DEFAULT_TOL,
            scan_points: DEFAULT_SCAN_POINTS,
            format: Format::Json,
            spectrum_out: None,
            scan_out: None,
            wavefunction_out: None,
            level: 0,
            z_range: None,
            wave_points: DEFAULT_WAVE_POINTS,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(one_line(&e.to_string())))?;
        let units = file.model.length_scale_nm.map(UnitScale::new).transpose()?;
        let family = match units {
            Some(scale) => to_dimensionless(&file.model.family, scale)?,
            None => file.model.family,
        };
        let span = match (file.model.z0, file.model.z1) {
            (Some(a), Some(b)) => Some(match units {
                Some(s) => (s.length_from_nm(a), s.length_from_nm(b)),
                None => (a, b),
            }),
            (None, None) => None,
            _ => return Err(Error::Config("give both z0 and z1 or neither".into())),
        };
        let model = build_model(family, span)?;
        let ordering = file.ordering.name.parse()?;
        let method = file.method.kind.as_deref().unwrap_or("poles").parse()?;
        let mut cfg = RunConfig::new(model, units, ordering, method);
        cfg.window = match (file.method.emin, file.method.emax) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => return Err(Error::Config("give both emin and emax or neither".into())),
        };
        cfg.n = file.method.n.unwrap_or(DEFAULT_N);
        cfg.tol = file.method.tol.unwrap_or(DEFAULT_TOL);
        cfg.scan_points = file.method.points.unwrap_or(DEFAULT_SCAN_POINTS);
        cfg.format = file.output.format.as_deref().map(str::parse).transpose()?.unwrap_or_default();
        cfg.spectrum_out = file.output.spectrum;
        cfg.scan_out = file.output.scan;
        cfg.wavefunction_out = file.output.wavefunction;
        cfg.level = file.output.level.unwrap_or(0);
        cfg.z_range = match (file.output.zmin, file.output.zmax) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => return Err(Error::Config("give both zmin and zmax or neither".into())),
        };
        cfg.wave_points = file.output.points.unwrap_or(DEFAULT_WAVE_POINTS);
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    /// Reject combinations that cannot run before any work is done.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if self.scan_points < 3 {
            return Err(Error::Config("scan needs at least 3 points".into()));
        }
        if let Some((a, b)) = self.window {
            if !(a < b) {
                return Err(Error::Config(format!("search window needs emin < emax, got [{a}, {b}]")));
            }
        }
        if !self.ordering.can_match() {
            return Err(Error::UnsupportedMatching { ordering: self.ordering.name() });
        }
        match self.method {
            MethodKind::Transcendental | MethodKind::Compare => {
                AnalyticProblem::new(&self.model, self.ordering)?;
            }
            MethodKind::ClosedForm => {
                if !matches!(
                    self.model.family,
                    ProfileFamily::SymmetricRational { .. }
                        | ProfileFamily::Exponential { .. }
                        | ProfileFamily::SingularParabolicMass { .. }
                ) {
                    return Err(Error::UnsupportedAnalytic {
                        ordering: self.ordering.name(),
                        reason: format!("no closed-form spectrum for the {} family", self.model.family.label()),
                    });
                }
            }
            MethodKind::Poles => {}
        }
        Ok(())
    }

    pub fn to_internal_energy(&self, e: f64) -> f64 {
        match self.units {
            Some(s) => s.energy_from_ev(e * 1e-3),
            None => e,
        }
    }

    pub fn to_reported_energy(&self, e: f64) -> f64 {
        match self.units {
            Some(s) => s.energy_to_mev(e),
            None => e,
        }
    }

    pub fn energy_unit(&self) -> &'static str {
        if self.units.is_some() {
            "meV"
        } else {
            "dimensionless"
        }
    }

    /// Search window in solver units, clipped below the continuum threshold.
    pub fn internal_window(&self) -> (f64, f64) {
        let threshold = self.model.threshold();
        let (lo, hi) = match self.window {
            Some((a, b)) => (self.to_internal_energy(a), self.to_internal_energy(b)),
            None => (self.model.potential_floor(2000), threshold),
        };
        (lo, hi.min(threshold))
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
[model]
family = "symmetric-rational"
mu = 3.0
sigma = 4.0
z0 = -2.0
z1 = 2.0

[ordering]
name = "zk"

[method]
kind = "transcendental"
emin = -9.0
emax = -1.8
"#;

    #[test]
    fn parses_sections() {
        let cfg = RunConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.ordering, OrderingSpec::Zk);
        assert_eq!(cfg.method, MethodKind::Transcendental);
        assert_eq!(cfg.window, Some((-9.0, -1.8)));
        assert_eq!(cfg.n, DEFAULT_N);
        assert!((cfg.model.v0 + 1.8).abs() < 1e-12);
        cfg.validate().unwrap();
    }

    #[test]
    fn transcendental_tl_is_rejected_up_front() {
        let text = SAMPLE.replace("\"zk\"", "\"tl\"");
        let err = RunConfig::parse(&text).unwrap().validate().unwrap_err();
        assert_eq!(err.code(), "unsupported-analytic");
    }

    #[test]
    fn physical_units() {
        let text = r#"
[model]
family = "parabolic-double"
a = 9.4
b = 11.0
c = 25.0
d = 31.0
v0 = 0.3
m0 = 0.096
m1 = 0.0655
length_scale_nm = 2.0

[ordering]
name = "bdd"
"#;
        let cfg = RunConfig::parse(text).unwrap();
        assert!((cfg.model.z0 - 5.5).abs() < 1e-12);
        assert!((cfg.to_reported_energy(cfg.model.v0) - 300.0).abs() < 1e-9);
        assert_eq!(cfg.energy_unit(), "meV");
    }

    #[test]
    fn errors_are_config_errors() {
        assert_eq!(RunConfig::parse("[model]\n").unwrap_err().code(), "config");
        let text = SAMPLE.replace("\"transcendental\"", "\"guess\"");
        assert_eq!(RunConfig::parse(&text).unwrap_err().code(), "config");
    }
}
