use std::time::{Duration, Instant};

use serde::Serialize;

use super::config::{Boundary, SolverConfig};
use super::grid::Grid;
use super::scheme::{apply_boundary, cfl_dt, check_state, lf_update, State};
use crate::error::{argument, Error, Result};
use crate::model::BurgersModel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnapshotMetrics {
    pub t: f64,
    pub max_abs_v: f64,
    pub min_v: f64,
    pub max_v: f64,
    pub total_variation: f64,
}

impl SnapshotMetrics {
    fn of(state: &State) -> Self {
        Self {
            t: state.t,
            max_abs_v: state.max_abs(),
            min_v: state.min(),
            max_v: state.max(),
            total_variation: state.total_variation(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// One state per requested snapshot time, in order.
    pub snapshots: Vec<State>,
    pub metrics: Vec<SnapshotMetrics>,
    pub steps: usize,
    /// Largest `|v_j|` seen over every step, initial data included.
    pub peak_speed: f64,
    pub wall_clock: Duration,
}

impl RunOutput {
    pub fn last(&self) -> &State {
        self.snapshots.last().expect("a run always records at least one snapshot")
    }
}

/// Checks config, grid and model against each other before any stepping.
pub fn validate_setup(grid: &Grid, model: &BurgersModel, config: &SolverConfig) -> Result<()> {
    config.validate()?;
    model.check_points(grid.centers.iter().copied())?;
    if let Boundary::StaticDirichlet(_) = config.boundary {
        let probe = State { t: 0.0, v: vec![0.0; grid.n_cells] };
        apply_boundary(&probe, grid, &config.boundary, model)?;
    }
    Ok(())
}

/// Advances `init` to `config.t_end`, recording the state at each snapshot
/// time. Time steps follow the CFL bound and are shortened so that every
/// snapshot time and `t_end` are hit exactly.
pub fn run(grid: &Grid, model: &BurgersModel, config: &SolverConfig, init: State) -> Result<RunOutput> {
    let started = Instant::now();
    validate_setup(grid, model, config)?;
    if init.v.len() != grid.n_cells {
        return Err(argument(format!(
            "initial state has {} cells, grid has {}",
            init.v.len(),
            grid.n_cells
        )));
    }
    check_state(&init, model, 0)?;

    let mut state = State { t: 0.0, ..init };
    let mut snapshots = Vec::with_capacity(config.snapshot_times.len());
    let mut pending = config.snapshot_times.iter().copied().peekable();
    let mut peak_speed = state.max_abs();
    let mut steps = 0usize;

    while pending.peek() == Some(&0.0) {
        snapshots.push(state.clone());
        pending.next();
    }

    while state.t < config.t_end {
        let target = pending.peek().copied().unwrap_or(config.t_end);
        let remaining = target - state.t;
        let dt = cfl_dt(&state, grid, model, config.cfl);
        let (dt, lands) = if dt >= remaining { (remaining, true) } else { (dt, false) };

        let mut next = lf_update(&state, grid, model, config.mode, &config.boundary, dt)?;
        steps += 1;
        if lands {
            next.t = target;
        }
        check_state(&next, model, steps).map_err(|e| match e {
            Error::Instability { cell, value, t, .. } => Error::Instability { step: steps, t, cell, value },
            other => other,
        })?;
        peak_speed = peak_speed.max(next.max_abs());
        state = next;

        if lands && pending.peek() == Some(&target) {
            snapshots.push(state.clone());
            pending.next();
        }
    }

    let metrics = snapshots.iter().map(SnapshotMetrics::of).collect();
    Ok(RunOutput { snapshots, metrics, steps, peak_speed, wall_clock: started.elapsed() })
}
