//! Experiment drivers on top of the solver: Lambda sweeps against the flat
//! (`L = 0`) reference, static-preservation studies, and the named presets
//! `fig1`..`fig7`.

use std::thread;

use serde::Serialize;

use crate::error::{argument, Result};
use crate::fvsolver::{initial_data, run, Boundary, Grid, InitialData, RunOutput, SolverConfig};
use crate::geometry::SpacetimeParams;
use crate::model::{Branch, BurgersModel, StaticSolution};

/// `sum_j |a_j - b_j| dr`
pub fn l1_distance(a: &[f64], b: &[f64], dr: f64) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() * dr
}

pub fn linf_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
}

/// One `metrics.csv` row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub t: f64,
    pub lambda: f64,
    pub l1_distance_to_lambda0: f64,
    pub max_v: f64,
    pub min_v: f64,
}

#[derive(Debug, Clone)]
pub struct SweepRun {
    pub lambda: f64,
    pub output: RunOutput,
}

#[derive(Debug, Clone)]
pub struct Sweep {
    /// In the order the lambdas were given.
    pub runs: Vec<SweepRun>,
    /// Grouped by lambda, then by snapshot time.
    pub rows: Vec<SweepRow>,
}

impl Sweep {
    pub fn run_for(&self, lambda: f64) -> Option<&SweepRun> {
        self.runs.iter().find(|r| r.lambda == lambda)
    }

    pub fn distances(&self, lambda: f64) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|row| row.lambda == lambda)
            .map(|row| row.l1_distance_to_lambda0)
            .collect()
    }
}

fn single_run(grid: &Grid, c: f64, lambda: f64, config: &SolverConfig, init: &InitialData) -> Result<RunOutput> {
    let model = BurgersModel::new(SpacetimeParams::new(lambda, c)?);
    let state = initial_data(grid, init, &model)?;
    run(grid, &model, config, state)
}

/// Runs identical initial data for each lambda (concurrently, one solver per
/// thread) and measures every snapshot against the `L = 0` run.
pub fn sweep(
    grid: &Grid,
    c: f64,
    lambdas: &[f64],
    config: &SolverConfig,
    init: &InitialData,
) -> Result<Sweep> {
    if lambdas.is_empty() {
        return Err(argument("a sweep needs at least one lambda"));
    }
    let need_reference = !lambdas.contains(&0.0);
    let mut all: Vec<f64> = lambdas.to_vec();
    if need_reference {
        all.push(0.0);
    }

    let results: Vec<Result<RunOutput>> = thread::scope(|scope| {
        let handles: Vec<_> = all
            .iter()
            .map(|&lambda| scope.spawn(move || single_run(grid, c, lambda, config, init)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    });
    let mut outputs = results.into_iter().collect::<Result<Vec<_>>>()?;

    let reference = if need_reference {
        outputs.pop().expect("reference run was scheduled")
    } else {
        let idx = lambdas.iter().position(|&l| l == 0.0).expect("checked above");
        outputs[idx].clone()
    };

    let mut rows = Vec::new();
    for (&lambda, out) in lambdas.iter().zip(&outputs) {
        for (snap, base) in out.snapshots.iter().zip(&reference.snapshots) {
            rows.push(SweepRow {
                t: snap.t,
                lambda,
                l1_distance_to_lambda0: l1_distance(&snap.v, &base.v, grid.dr),
                max_v: snap.max(),
                min_v: snap.min(),
            });
        }
    }
    let runs = lambdas.iter().zip(outputs).map(|(&lambda, output)| SweepRun { lambda, output }).collect();
    Ok(Sweep { runs, rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriftRow {
    pub t: f64,
    pub linf: f64,
    pub l1: f64,
}

#[derive(Debug, Clone)]
pub struct StaticStudy {
    /// The static profile at the cell centres (also the initial data).
    pub exact: Vec<f64>,
    pub output: RunOutput,
    pub drift: Vec<DriftRow>,
}

impl StaticStudy {
    pub fn final_linf(&self) -> f64 {
        self.drift.last().map_or(0.0, |d| d.linf)
    }
}

/// Starts from the static profile, runs with static Dirichlet ghosts
/// (overriding `config.boundary`) and records the drift at each snapshot.
pub fn static_study(
    grid: &Grid,
    model: &BurgersModel,
    sol: StaticSolution,
    config: &SolverConfig,
) -> Result<StaticStudy> {
    let sol = StaticSolution::new(model, sol.k, sol.branch)?;
    let config = config.clone().with_boundary(Boundary::StaticDirichlet(sol));
    let init = initial_data(grid, &InitialData::Static(sol), model)?;
    let exact = init.v.clone();
    let output = run(grid, model, &config, init)?;
    let drift = output
        .snapshots
        .iter()
        .map(|s| DriftRow {
            t: s.t,
            linf: linf_distance(&s.v, &exact),
            l1: l1_distance(&s.v, &exact, grid.dr),
        })
        .collect();
    Ok(StaticStudy { exact, output, drift })
}

/// What a preset reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetKind {
    /// Relativistic run compared against the flat run (`sweep` over `[0, lambda]`).
    LambdaComparison,
    /// Static profile against the scheme (`static`).
    StaticPreservation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub kind: PresetKind,
    pub lambda: f64,
    pub init: InitialData,
    pub boundary: Boundary,
    pub n_cells: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub t_end: f64,
    /// Equally spaced snapshots after `t = 0`; `t = 0` is always included.
    pub n_snapshots: usize,
}

pub const PRESET_NAMES: [&str; 7] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"];

/// Rarefaction data for the Lambda-comparison presets.
pub const RAREFACTION: InitialData = InitialData::Riemann { left: 0.2, right: 0.6, split: 0.5 };
/// Shock data for the Lambda-comparison presets.
pub const SHOCK: InitialData = InitialData::Riemann { left: 0.6, right: 0.2, split: 0.5 };

const STATIC_HALF: StaticSolution = StaticSolution { k: 0.5, branch: Branch::Positive };
const STATIC_FLAT: StaticSolution = StaticSolution { k: 0.9, branch: Branch::Positive };

pub fn preset(name: &str) -> Option<Preset> {
    let riemann = |name, lambda, init| Preset {
        name,
        kind: PresetKind::LambdaComparison,
        lambda,
        init,
        boundary: Boundary::Transmissive,
        n_cells: 400,
        r_min: 0.0,
        r_max: 1.0,
        t_end: 0.5,
        n_snapshots: 5,
    };
    let still = |name, lambda, sol, r_max| Preset {
        name,
        kind: PresetKind::StaticPreservation,
        lambda,
        init: InitialData::Static(sol),
        boundary: Boundary::StaticDirichlet(sol),
        n_cells: 400,
        r_min: 0.0,
        r_max,
        t_end: 0.5,
        n_snapshots: 5,
    };
    Some(match name {
        "fig1" => riemann("fig1", 1.0, RAREFACTION),
        "fig2" => riemann("fig2", 1.0, SHOCK),
        "fig3" => riemann("fig3", -1.0, RAREFACTION),
        "fig4" => riemann("fig4", -1.0, SHOCK),
        "fig5" => still("fig5", -1.0, STATIC_HALF, STATIC_NEGATIVE_LAMBDA_R_MAX),
        "fig6" => still("fig6", 1.0, STATIC_HALF, 1.0),
        "fig7" => still("fig7", 0.0, STATIC_FLAT, 1.0),
        _ => return None,
    })
}

/// Outer radius of the `L = -1`, `K = 0.5` static preset. That branch is
/// real only for `r <= 1`, so the right ghost cell must stay inside.
pub const STATIC_NEGATIVE_LAMBDA_R_MAX: f64 = 0.9;

impl Preset {
    pub fn grid(&self) -> Result<Grid> {
        crate::fvsolver::make_grid(self.n_cells, self.r_min, self.r_max)
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig::new(self.t_end)
            .with_boundary(self.boundary)
            .with_uniform_snapshots(self.n_snapshots, true)
    }

    /// Lambdas compared by this preset.
    pub fn lambdas(&self) -> Vec<f64> {
        match self.kind {
            PresetKind::LambdaComparison => vec![0.0, self.lambda],
            PresetKind::StaticPreservation => vec![self.lambda],
        }
    }
}
