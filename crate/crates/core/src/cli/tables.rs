//! Presets for the eight published spectra tables and the comparison of
//! computed levels against the printed ones.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::units::{to_dimensionless, UnitScale};
use crate::error::{Error, Result};
use crate::multistep::Method;
use crate::orderings::OrderingSpec;
use crate::profiles::{build_model, HeterostructureModel, ProfileFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
}

impl TableId {
    pub const ALL: [TableId; 8] =
        [TableId::T1, TableId::T2, TableId::T3, TableId::T4, TableId::T5, TableId::T6, TableId::T7, TableId::T8];
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", *self as usize + 1)
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        TableId::ALL
            .into_iter()
            .find(|id| id.to_string() == t)
            .ok_or_else(|| Error::Config(format!("unknown table '{s}' (expected T1 to T8)")))
    }
}

/// One printed row: a model, an ordering, a method and its values.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub label: &'static str,
    pub family: ProfileFamily,
    pub span: Option<(f64, f64)>,
    pub ordering: OrderingSpec,
    pub method: Method,
    pub printed: Vec<f64>,
    pub tolerance: f64,
}

impl TableRow {
    pub fn model(&self, units: Option<UnitScale>) -> Result<HeterostructureModel> {
        match units {
            Some(s) => build_model(to_dimensionless(&self.family, s)?, self.span.map(|(a, b)| (a / s.length_nm, b / s.length_nm))),
            None => build_model(self.family.clone(), self.span),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TablePreset {
    pub id: TableId,
    pub title: &'static str,
    /// Physical-unit tables print meV; the model is given in nm and eV.
    pub units: Option<UnitScale>,
    pub rows: Vec<TableRow>,
}

const SYM: ProfileFamily = ProfileFamily::SymmetricRational { mu: 3.0, sigma: 4.0 };
const MORSE: ProfileFamily = ProfileFamily::MorseLike { v0m: 10.0, m0m: 2.0, sigma: 2.0 };
const EXP: ProfileFamily = ProfileFamily::Exponential { vc: 3.0, mu0: 0.5, c: 1.0, lambda: 1.0 };
const SING: ProfileFamily = ProfileFamily::SingularParabolicMass { a: 2.0, b: -10.0, c: 1.0 };
const PARABOLIC: ProfileFamily =
    ProfileFamily::ParabolicDouble { a: 9.4, b: 11.0, c: 25.0, d: 31.0, v0: 0.3, m0: 0.0960, m1: 0.0655 };

const SYM_SPAN: Option<(f64, f64)> = Some((-2.0, 2.0));
const MORSE_SPAN: Option<(f64, f64)> = Some((-0.8, 0.8));

const BDD: OrderingSpec = OrderingSpec::Bdd;
const ZK: OrderingSpec = OrderingSpec::Zk;
const TL: OrderingSpec = OrderingSpec::Tl;

const POLES: Method = Method::MultiStepPoles;
const TRANS: Method = Method::Transcendental;
const CLOSED: Method = Method::ClosedForm;

fn row(
    label: &'static str,
    family: ProfileFamily,
    span: Option<(f64, f64)>,
    ordering: OrderingSpec,
    method: Method,
    printed: &[f64],
    tolerance: f64,
) -> TableRow {
    TableRow { label, family, span, ordering, method, printed: printed.to_vec(), tolerance }
}

pub fn preset(id: TableId) -> TablePreset {
    let (title, units, rows) = match id {
        TableId::T1 => {
            let bdd = [-8.25, -6.875, -5.625, -4.50009, -3.5013, -2.63724, -1.96428];
            let zk = [-8.3099, -6.9297, -5.6745, -4.54428, -3.53899, -2.66042, -1.94466];
            let tl = [-8.29051, -6.9132, -5.66088, -4.53358, -3.53155, -2.65848, -1.95561];
            let t = 1e-3;
            let c = 1e-5;
            (
                "symmetric rational well, sigma = 4, mu = 3, z0 = -z1 = -2",
                None,
                vec![
                    row("transcendental", SYM, SYM_SPAN, BDD, TRANS, &bdd, t),
                    row("poles", SYM, SYM_SPAN, BDD, POLES, &bdd, t),
                    row("whole axis", SYM, SYM_SPAN, BDD, CLOSED, &[-8.25, -6.875, -5.625, -4.5, -3.5, -2.625, -1.875], c),
                    row("transcendental", SYM, SYM_SPAN, ZK, TRANS, &zk, t),
                    row("poles", SYM, SYM_SPAN, ZK, POLES, &zk, t),
                    row(
                        "whole axis",
                        SYM,
                        SYM_SPAN,
                        ZK,
                        CLOSED,
                        &[-8.3099, -6.9297, -5.6745, -4.54430, -3.539103, -2.65890, -1.90370],
                        c,
                    ),
                    row("poles", SYM, SYM_SPAN, TL, POLES, &tl, t),
                    row(
                        "whole axis",
                        SYM,
                        SYM_SPAN,
                        TL,
                        CLOSED,
                        &[-8.29167, -6.91667, -5.66667, -4.54167, -3.54167, -2.66667, -1.91667],
                        c,
                    ),
                ],
            )
        }
        TableId::T2 => {
            let g = ProfileFamily::GaussianMass { mu: 3.0, sigma: 4.0 };
            let g7 = ProfileFamily::GaussianMassDelta { mu: 3.0, sigma: 4.0, delta: 7.0 };
            let g70 = ProfileFamily::GaussianMassDelta { mu: 3.0, sigma: 4.0, delta: 70.0 };
            let t = 2e-3;
            (
                "rational potential with Gaussian masses, sigma = 4, mu = 3, z0 = -z1 = -2",
                None,
                vec![
                    row("m_G", g.clone(), SYM_SPAN, BDD, POLES, &[-8.27528, -6.92737, -5.727, -4.66314, -3.72403, -2.9007, -2.20866], t),
                    row("m_s", SYM, SYM_SPAN, BDD, POLES, &[-8.25, -6.875, -5.625, -4.50009, -3.5013, -2.63724, -1.96428], t),
                    row("m_G(7)", g7.clone(), SYM_SPAN, BDD, POLES, &[-8.01692, -6.47117, -5.00746, -3.52209, -2.28029], t),
                    row("m_G(70)", g70.clone(), SYM_SPAN, BDD, POLES, &[-7.57495, -6.13984, -3.45826, -2.56635], t),
                    row("m_G", g.clone(), SYM_SPAN, ZK, POLES, &[-8.30142, -6.95596, -5.75918, -4.70081, -3.76994, -2.95444, -2.24512], t),
                    row("m_s", SYM, SYM_SPAN, ZK, POLES, &[-8.3099, -6.9297, -5.6745, -4.54428, -3.53899, -2.66042, -1.94466], t),
                    row("m_G(7)", g7.clone(), SYM_SPAN, ZK, POLES, &[-8.37197, -6.63962, -4.83016, -3.36362, -2.32209], t),
                    row("m_G(70)", g70.clone(), SYM_SPAN, ZK, POLES, &[-8.26032, -5.19903, -4.0049, -2.2545], t),
                    row("m_G", g, SYM_SPAN, TL, POLES, &[-8.29282, -6.94682, -5.74927, -4.68975, -3.7573, -2.94111, -2.23907], t),
                    row("m_s", SYM, SYM_SPAN, TL, POLES, &[-8.29051, -6.9132, -5.66088, -4.53358, -3.53155, -2.65848, -1.95561], t),
                    row("m_G(7)", g7, SYM_SPAN, TL, POLES, &[-8.27014, -6.6162, -4.9169, -3.43401, -2.31913], t),
                    row("m_G(70)", g70, SYM_SPAN, TL, POLES, &[-8.04052, -5.53761, -3.87688, -2.40156], t),
                ],
            )
        }
        TableId::T3 => {
            let g = ProfileFamily::GaussianPotential { mu: 3.0, sigma: 4.0 };
            let g1 = ProfileFamily::GaussianPotentialDelta { mu: 3.0, sigma: 4.0, delta: 1.0 };
            let g7 = ProfileFamily::GaussianPotentialDelta { mu: 3.0, sigma: 4.0, delta: 7.0 };
            let t = 2e-3;
            (
                "Gaussian potentials with the rational mass, sigma = 4, mu = 3, z0 = -z1 = -2",
                None,
                vec![
                    row(
                        "V_G",
                        g.clone(),
                        SYM_SPAN,
                        BDD,
                        POLES,
                        &[-8.48885, -7.52102, -6.5416, -5.55965, -4.58509, -3.63137, -2.72542, -1.95856],
                        t,
                    ),
                    row("V_G(1)", g1.clone(), SYM_SPAN, BDD, POLES, &[-8.30802, -7.00905, -5.76342, -4.59031, -3.51713, -2.59422, -1.97481], t),
                    row("V_s", SYM, SYM_SPAN, BDD, POLES, &[-8.25, -6.875, -5.625, -4.50009, -3.5013, -2.63724, -1.96428], t),
                    row("V_G(7)", g7.clone(), SYM_SPAN, BDD, POLES, &[-7.34722, -4.45967, -2.41175], t),
                    row(
                        "V_G",
                        g.clone(),
                        SYM_SPAN,
                        ZK,
                        POLES,
                        &[-8.54777, -7.57359, -6.58914, -5.60293, -4.62408, -3.66359, -2.74035, -1.93135],
                        t,
                    ),
                    row("V_G(1)", g1.clone(), SYM_SPAN, ZK, POLES, &[-8.36777, -7.06359, -5.81314, -4.63529, -3.55622, -2.61807, -1.95067], t),
                    row("V_s", SYM, SYM_SPAN, ZK, POLES, &[-8.3099, -6.9297, -5.6745, -4.54428, -3.53899, -2.66042, -1.94466], t),
                    row("V_G(7)", g7.clone(), SYM_SPAN, ZK, POLES, &[-7.40843, -4.51762, -2.46253], t),
                    row(
                        "V_G",
                        g,
                        SYM_SPAN,
                        TL,
                        POLES,
                        &[-8.52892, -7.55827, -6.57661, -5.59274, -4.61611, -3.65847, -2.74106, -1.94436],
                        t,
                    ),
                    row("V_G(1)", g1, SYM_SPAN, TL, POLES, &[-8.34846, -7.04718, -5.7994, -4.62416, -3.5481, -2.61575, -1.9613], t),
                    row("V_s", SYM, SYM_SPAN, TL, POLES, &[-8.29051, -6.9132, -5.66088, -4.53358, -3.53155, -2.65848, -1.95561], t),
                    row("V_G(7)", g7, SYM_SPAN, TL, POLES, &[-7.38831, -4.4993, -2.4482], t),
                ],
            )
        }
        TableId::T4 => {
            let bdd = [-7.74229, -5.40587, -3.99419];
            let zk = [-8.08993, -5.60758, -4.12556];
            let t = 1e-3;
            (
                "Morse-like profiles, sigma = 2, V0M = 10, m0M = 2, z0 = -z1 = -0.8",
                None,
                vec![
                    row("transcendental", MORSE, MORSE_SPAN, BDD, TRANS, &bdd, t),
                    row("poles", MORSE, MORSE_SPAN, BDD, POLES, &bdd, t),
                    row("transcendental", MORSE, MORSE_SPAN, ZK, TRANS, &zk, t),
                    row("poles", MORSE, MORSE_SPAN, ZK, POLES, &zk, t),
                    row("poles", MORSE, MORSE_SPAN, TL, POLES, &[-8.04977, -5.5844, -4.10875], t),
                ],
            )
        }
        TableId::T5 => {
            let h = |tau: f64| ProfileFamily::HyperbolicMass { tau, v0m: 10.0, m0m: 2.0, sigma: 2.0 };
            let t = 2e-3;
            (
                "Morse potential with hyperbolic masses, sigma = 2, V0M = 10, m0M = 2, z0 = -z1 = -0.8",
                None,
                vec![
                    row("m_H(0.5)", h(0.5), MORSE_SPAN, BDD, POLES, &[-8.07565, -6.96429, -5.9702, -5.08382, -4.29792, -3.65763], t),
                    row("m_M", MORSE, MORSE_SPAN, BDD, POLES, &[-7.74229, -5.40587, -3.99419], t),
                    row("m_H(2.75)", h(2.75), MORSE_SPAN, BDD, POLES, &[-7.15447, -4.99484, -3.7632], t),
                    row("m_H(7)", h(7.0), MORSE_SPAN, BDD, POLES, &[-3.69866], t),
                    row("m_H(0.5)", h(0.5), MORSE_SPAN, ZK, POLES, &[-8.09038, -6.97779, -5.98252, -5.09502, -4.30839, -3.66699], t),
                    row("m_M", MORSE, MORSE_SPAN, ZK, POLES, &[-8.08993, -5.60758, -4.12556], t),
                    row("m_H(2.75)", h(2.75), MORSE_SPAN, ZK, POLES, &[-7.76532, -5.29044, -3.93178], t),
                    row("m_H(7)", h(7.0), MORSE_SPAN, ZK, POLES, &[-4.21368], t),
                    row("m_H(0.5)", h(0.5), MORSE_SPAN, TL, POLES, &[-8.08676, -6.977447, -5.97948, -5.09226, -4.30576, -3.66431], t),
                    row("m_M", MORSE, MORSE_SPAN, TL, POLES, &[-8.04977, -5.5844, -4.10875], t),
                    row("m_H(2.75)", h(2.75), MORSE_SPAN, TL, POLES, &[-7.70847, -5.2647, -3.9123], t),
                    row("m_H(7)", h(7.0), MORSE_SPAN, TL, POLES, &[-4.4308], t),
                ],
            )
        }
        TableId::T6 => {
            let t = 0.2;
            (
                "asymmetric parabolic well pair, V0 = 0.3 eV, m1 = 0.0655 me, m0 = 0.0960 me, a, b, c, d = 9.4, 11, 25, 31 nm (meV)",
                Some(UnitScale { length_nm: 1.0 }),
                vec![
                    row("poles", PARABOLIC, None, BDD, POLES, &[50.5284, 117.34107, 156.51738], t),
                    row("poles", PARABOLIC, None, ZK, POLES, &[54.1197, 130.65338, 160.38424], t),
                    row("poles", PARABOLIC, None, TL, POLES, &[52.8956, 126.1985, 158.91771], t),
                ],
            )
        }
        TableId::T7 => {
            let span = Some((-2.0, 2.0));
            let t = 2e-3;
            (
                "exponential profiles, Vc = 3, mu0 = 1/2, c = 1, lambda = 1, z0 = -2, z1 = 2",
                None,
                vec![
                    row("transcendental", EXP, span, BDD, TRANS, &[5.13516, 10.1865, 15.1575, 19.9185], t),
                    row("poles", EXP, span, BDD, POLES, &[5.13456, 10.1856, 15.1565, 19.9177], t),
                    row("transcendental", EXP, span, ZK, TRANS, &[4.63268, 10.0389, 15.223, 20.076], t),
                    row("poles", EXP, span, ZK, POLES, &[4.6323, 10.0384, 15.2222, 20.0753], t),
                    row("poles", EXP, span, TL, POLES, &[4.63027, 9.9751, 15.119, 19.965], t),
                ],
            )
        }
        TableId::T8 => {
            let span = Some((0.1, 4.0));
            let t = 1e-3;
            let c = 1e-4;
            (
                "singular parabolic mass, A = 2, B = -10, c = 1, z0 = 0.1, z1 = 4",
                None,
                vec![
                    row("transcendental", SING, span, BDD, TRANS, &[-10.68215, -3.90650, -2.00662], t),
                    row("poles", SING, span, BDD, POLES, &[-10.6822, -3.90651, -2.00662], t),
                    row("whole axis", SING, span, BDD, CLOSED, &[-10.6688, -3.9033, -2.00539], c),
                    row("transcendental", SING, span, ZK, TRANS, &[-16.05884, -4.94871, -2.370368], t),
                    row("poles", SING, span, ZK, POLES, &[-16.05698, -4.94871, -2.37037], t),
                    row("whole axis", SING, span, ZK, CLOSED, &[-16.0, -4.93827, -2.36686], c),
                    row("poles", SING, span, TL, POLES, &[-14.38634, -4.65256, -2.27083], t),
                ],
            )
        }
    };
    TablePreset { id, title, units, rows }
}

impl TablePreset {
    /// Search window in printed units: the span of the printed finite-structure
    /// values padded by a fifth of that span on both sides.
    pub fn window(&self) -> (f64, f64) {
        let values = self.rows.iter().filter(|r| r.method != Method::ClosedForm).flat_map(|r| r.printed.iter().copied());
        let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        let pad = 0.2 * (hi - lo);
        (lo - pad, hi + pad)
    }

    fn to_internal(&self, e: f64) -> f64 {
        match self.units {
            Some(s) => s.energy_from_ev(e * 1e-3),
            None => e,
        }
    }

    fn to_printed(&self, e: f64) -> f64 {
        match self.units {
            Some(s) => s.energy_to_mev(e),
            None => e,
        }
    }

    /// Evaluate one row at discretization `n`.
    pub fn evaluate_row(&self, row: &TableRow, n: usize) -> Result<RowReport> {
        let model = self.row_model(row)?;
        let (lo, hi) = self.window();
        let window = match row.method {
            Method::ClosedForm => (f64::NEG_INFINITY, model.threshold()),
            _ => (self.to_internal(lo), self.to_internal(hi).min(model.threshold())),
        };
        let result = super::solve(&model, row.ordering, row.method, window, n, 1e-7)?;
        let mut computed: Vec<f64> = result.energies.iter().map(|&e| self.to_printed(e)).collect();
        if row.method == Method::ClosedForm {
            computed.truncate(row.printed.len());
        }
        Ok(RowReport {
            label: row.label,
            ordering: row.ordering,
            method: row.method,
            printed: row.printed.clone(),
            computed,
            tolerance: row.tolerance,
            diagnostics: result.diagnostics,
        })
    }

    pub fn row_model(&self, row: &TableRow) -> Result<HeterostructureModel> {
        row.model(self.units)
    }

    pub fn reproduce(&self, n: usize) -> Result<TableReport> {
        let rows = self.rows.par_iter().map(|r| self.evaluate_row(r, n)).collect::<Result<Vec<_>>>()?;
        Ok(TableReport {
            id: self.id,
            title: self.title,
            unit: if self.units.is_some() { "meV" } else { "dimensionless" },
            window: self.window(),
            rows,
        })
    }
}

/// Computed levels of one printed row. Levels are paired by index, lowest first;
/// computed levels beyond the printed ones are reported as extra.
#[derive(Debug, Clone, PartialEq)]
pub struct RowReport {
    pub label: &'static str,
    pub ordering: OrderingSpec,
    pub method: Method,
    pub printed: Vec<f64>,
    pub computed: Vec<f64>,
    pub tolerance: f64,
    pub diagnostics: Vec<String>,
}

impl RowReport {
    pub fn differences(&self) -> Vec<Option<f64>> {
        self.printed.iter().enumerate().map(|(k, p)| self.computed.get(k).map(|c| (c - p).abs())).collect()
    }

    pub fn max_difference(&self) -> f64 {
        self.differences().into_iter().map(|d| d.unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }

    /// Every printed cell has a computed level within tolerance.
    pub fn cells_match(&self) -> bool {
        self.differences().into_iter().all(|d| matches!(d, Some(d) if d <= self.tolerance))
    }

    pub fn extras(&self) -> &[f64] {
        self.computed.get(self.printed.len()..).unwrap_or(&[])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub id: TableId,
    pub title: &'static str,
    pub unit: &'static str,
    pub window: (f64, f64),
    pub rows: Vec<RowReport>,
}

pub fn reproduce_table(id: TableId, n: usize) -> Result<TableReport> {
    preset(id).reproduce(n)
}
