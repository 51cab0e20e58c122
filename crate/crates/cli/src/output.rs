//! File formats shared with the plotting side.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::Serialize;

use desitter::experiments::{DriftRow, SweepRow};
use desitter::State;

use crate::config::RunConfig;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits, round-trip exact.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn table(header: &str, rows: impl Iterator<Item = Vec<f64>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(num).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn profile_csv(r: &[f64], v: &[f64]) -> String {
    table("r,v", r.iter().zip(v).map(|(&r, &v)| vec![r, v]))
}

pub fn metrics_csv(rows: &[SweepRow]) -> String {
    table(
        "t,lambda,l1_distance_to_lambda0,max_v,min_v",
        rows.iter().map(|w| vec![w.t, w.lambda, w.l1_distance_to_lambda0, w.max_v, w.min_v]),
    )
}

pub fn drift_csv(rows: &[DriftRow]) -> String {
    table("t,linf,l1", rows.iter().map(|d| vec![d.t, d.linf, d.l1]))
}

pub fn snapshot_name(index: usize) -> String {
    format!("snap_{index:03}.csv")
}

#[derive(Debug, Serialize)]
pub struct Meta {
    pub lambda: f64,
    pub c: f64,
    pub n_cells: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub cfl: f64,
    pub mode: String,
    pub boundary: String,
    pub init: String,
    pub t_end: f64,
    pub snapshot_times: Vec<f64>,
    pub tool_version: &'static str,
}

impl Meta {
    pub fn of(cfg: &RunConfig) -> Self {
        Self {
            lambda: cfg.params.lambda,
            c: cfg.params.c,
            n_cells: cfg.grid.n_cells,
            r_min: cfg.grid.r_min,
            r_max: cfg.grid.r_max,
            cfl: cfg.solver.cfl,
            mode: cfg.solver.mode.to_string(),
            boundary: cfg.solver.boundary.to_string(),
            init: cfg.init.to_string(),
            t_end: cfg.solver.t_end,
            snapshot_times: cfg.solver.snapshot_times.clone(),
            tool_version: TOOL_VERSION,
        }
    }
}

pub fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value).context("cannot serialize JSON")?;
    text.push('\n');
    write(path, &text)
}

/// `snap_NNN.csv` for each state plus `meta.json`.
pub fn write_run(dir: &Path, cfg: &RunConfig, snapshots: &[State]) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for (i, s) in snapshots.iter().enumerate() {
        write(&dir.join(snapshot_name(i)), &profile_csv(&cfg.grid.centers, &s.v))?;
    }
    write_json(&dir.join("meta.json"), &Meta::of(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(num(0.5), "5.0000000000000000e-1");
        assert_eq!(num(-0.1), "-1.0000000000000001e-1");
        assert_eq!(num(0.0), "0.0000000000000000e0");
        for x in [0.1, 1.0 / 3.0, 123.456, -2.5e-9, f64::MIN_POSITIVE] {
            assert_eq!(num(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn profile_layout() {
        let text = profile_csv(&[0.25, 0.75], &[1.0, 0.0]);
        assert_eq!(text, "r,v\n2.5000000000000000e-1,1.0000000000000000e0\n7.5000000000000000e-1,0.0000000000000000e0\n");
    }

    #[test]
    fn metrics_header() {
        let row = SweepRow { t: 0.0, lambda: 1.0, l1_distance_to_lambda0: 0.0, max_v: 0.6, min_v: 0.2 };
        let text = metrics_csv(&[row]);
        assert!(text.starts_with("t,lambda,l1_distance_to_lambda0,max_v,min_v\n"));
        assert_eq!(text.lines().count(), 2);
    }
}
