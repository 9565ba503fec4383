//! Text renderings of results. Every number goes through [`sig9`], so the
//! same input always gives byte-identical output.

use serde_json::{json, Value};

use super::tables::{RowReport, TableReport};
use super::Comparison;
use crate::multistep::{ScanResult, SpectrumResult};
use crate::numfmt::sig9;

fn num(x: f64) -> Value {
    if x.is_finite() {
        sig9(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64).map(Value::Number).unwrap_or(Value::Null)
    } else {
        Value::String(sig9(x))
    }
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

pub fn status(result: &SpectrumResult) -> &'static str {
    if result.energies.is_empty() {
        "empty"
    } else {
        "ok"
    }
}

pub fn spectrum_json(result: &SpectrumResult, unit: &str) -> String {
    pretty(&json!({
        "status": status(result),
        "method": result.method.label(),
        "ordering": result.ordering,
        "unit": unit,
        "energies": nums(&result.energies),
        "residuals": nums(&result.residuals),
        "n": result.n,
        "tol": num(result.tol),
        "diagnostics": result.diagnostics,
    }))
}

pub fn spectrum_csv(result: &SpectrumResult) -> String {
    let mut out = String::from("k,E,residual\n");
    for (k, (e, r)) in result.energies.iter().zip(&result.residuals).enumerate() {
        out.push_str(&format!("{k},{},{}\n", sig9(*e), sig9(*r)));
    }
    out
}

pub fn spectrum_md(result: &SpectrumResult, unit: &str) -> String {
    let mut out = format!(
        "# Spectrum: {} / {} ({unit})\n\nstatus: {}\n\n| k | E | residual |\n|---|---|---|\n",
        result.method.label(),
        result.ordering,
        status(result)
    );
    for (k, (e, r)) in result.energies.iter().zip(&result.residuals).enumerate() {
        out.push_str(&format!("| {k} | {} | {} |\n", sig9(*e), sig9(*r)));
    }
    for d in &result.diagnostics {
        out.push_str(&format!("\n> {d}\n"));
    }
    out
}

pub fn scan_csv(scan: &ScanResult) -> String {
    let mut out = String::from("E,Rc\n");
    for (e, v) in scan.energies.iter().zip(&scan.values) {
        out.push_str(&format!("{},{}\n", sig9(*e), sig9(*v)));
    }
    out
}

pub fn scan_json(scan: &ScanResult, unit: &str) -> String {
    pretty(&json!({
        "ordering": scan.ordering,
        "unit": unit,
        "n": scan.grid_n,
        "E": nums(&scan.energies),
        "Rc": nums(&scan.values),
    }))
}

fn comparison_rows(c: &Comparison) -> Vec<(usize, Option<f64>, Option<f64>)> {
    let len = c.transcendental.energies.len().max(c.poles.energies.len());
    (0..len).map(|k| (k, c.transcendental.energies.get(k).copied(), c.poles.energies.get(k).copied())).collect()
}

fn cell(x: Option<f64>) -> String {
    x.map(sig9).unwrap_or_default()
}

fn diff(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    Some((a? - b?).abs())
}

pub fn comparison_md(c: &Comparison, unit: &str) -> String {
    let mut out = format!(
        "# Transcendental vs poles: {} ({unit})\n\n| k | transcendental | poles | abs diff |\n|---|---|---|---|\n",
        c.ordering
    );
    for (k, a, b) in comparison_rows(c) {
        out.push_str(&format!("| {k} | {} | {} | {} |\n", cell(a), cell(b), cell(diff(a, b))));
    }
    out.push_str(&format!("\nmax discrepancy: {}\n", sig9(c.max_discrepancy())));
    out
}

pub fn comparison_csv(c: &Comparison) -> String {
    let mut out = String::from("k,transcendental,poles,abs_diff\n");
    for (k, a, b) in comparison_rows(c) {
        out.push_str(&format!("{k},{},{},{}\n", cell(a), cell(b), cell(diff(a, b))));
    }
    out
}

pub fn comparison_json(c: &Comparison, unit: &str) -> String {
    pretty(&json!({
        "ordering": c.ordering.name(),
        "unit": unit,
        "transcendental": nums(&c.transcendental.energies),
        "poles": nums(&c.poles.energies),
        "max_discrepancy": num(c.max_discrepancy()),
    }))
}

fn verdict(r: &RowReport, k: usize) -> &'static str {
    match r.differences()[k] {
        Some(d) if d <= r.tolerance => "ok",
        Some(_) => "FAIL",
        None => "missing",
    }
}

pub fn table_md(t: &TableReport) -> String {
    let mut out = format!(
        "# {}: {}\n\nenergies: {}; pole/determinant window [{}, {}]\n\n\
         | row | ordering | method | k | printed | computed | abs diff | tol | |\n\
         |---|---|---|---|---|---|---|---|---|\n",
        t.id,
        t.title,
        t.unit,
        sig9(t.window.0),
        sig9(t.window.1)
    );
    for r in &t.rows {
        let diffs = r.differences();
        for (k, p) in r.printed.iter().enumerate() {
            out.push_str(&format!(
                "| {} | {} | {} | {k} | {} | {} | {} | {} | {} |\n",
                r.label,
                r.ordering,
                r.method.label(),
                sig9(*p),
                cell(r.computed.get(k).copied()),
                cell(diffs[k]),
                sig9(r.tolerance),
                verdict(r, k)
            ));
        }
        for (j, e) in r.extras().iter().enumerate() {
            out.push_str(&format!(
                "| {} | {} | {} | {} | | {} | | | extra |\n",
                r.label,
                r.ordering,
                r.method.label(),
                r.printed.len() + j,
                sig9(*e)
            ));
        }
    }
    out
}

pub fn table_csv(t: &TableReport) -> String {
    let mut out = String::from("table,row,ordering,method,k,printed,computed,abs_diff,tol,verdict\n");
    for r in &t.rows {
        let diffs = r.differences();
        for (k, p) in r.printed.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{k},{},{},{},{},{}\n",
                t.id,
                r.label,
                r.ordering,
                r.method.label(),
                sig9(*p),
                cell(r.computed.get(k).copied()),
                cell(diffs[k]),
                sig9(r.tolerance),
                verdict(r, k)
            ));
        }
        for (j, e) in r.extras().iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},,{},,,extra\n",
                t.id,
                r.label,
                r.ordering,
                r.method.label(),
                r.printed.len() + j,
                sig9(*e)
            ));
        }
    }
    out
}

pub fn table_json(t: &TableReport) -> String {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            json!({
                "row": r.label,
                "ordering": r.ordering.name(),
                "method": r.method.label(),
                "printed": nums(&r.printed),
                "computed": nums(&r.computed),
                "tolerance": num(r.tolerance),
                "max_abs_diff": num(r.max_difference()),
                "cells_match": r.cells_match(),
                "extras": nums(r.extras()),
            })
        })
        .collect();
    pretty(&json!({
        "table": t.id.to_string(),
        "title": t.title,
        "unit": t.unit,
        "window": nums(&[t.window.0, t.window.1]),
        "rows": rows,
    }))
}
