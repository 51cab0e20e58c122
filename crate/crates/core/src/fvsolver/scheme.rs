use serde::{Deserialize, Serialize};

use super::config::{Boundary, InitialData, SchemeMode, SolverConfig};
use super::grid::Grid;
use crate::error::{argument, domain, Error, Result};
use crate::model::{BurgersModel, StaticSolution};

/// Cell averages at time `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub t: f64,
    pub v: Vec<f64>,
}

impl State {
    pub fn max_abs(&self) -> f64 {
        self.v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn min(&self) -> f64 {
        self.v.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn total_variation(&self) -> f64 {
        self.v.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
    }
}

/// Guards the all-at-rest state in [`cfl_dt`].
pub const SPEED_FLOOR: f64 = 1e-8;

/// Steps are aborted once `|v|` exceeds `c` by this margin.
pub const INSTABILITY_MARGIN: f64 = 0.1;

fn checked_static(model: &BurgersModel, sol: &StaticSolution) -> Result<StaticSolution> {
    StaticSolution::new(model, sol.k, sol.branch)
}

pub fn initial_data(grid: &Grid, spec: &InitialData, model: &BurgersModel) -> Result<State> {
    let c = model.c();
    let v: Vec<f64> = match *spec {
        InitialData::Riemann { left, right, split } => grid
            .centers
            .iter()
            .map(|&r| if r < split { left } else { right })
            .collect(),
        InitialData::Static(sol) => {
            let sol = checked_static(model, &sol)?;
            grid.centers.iter().map(|&r| model.static_solution(&sol, r)).collect::<Result<_>>()?
        }
        InitialData::Constant(v0) => vec![v0; grid.n_cells],
    };
    if let Some((j, x)) = v.iter().enumerate().find(|(_, x)| !(x.abs() <= c)) {
        return Err(domain(format!("initial value {x} in cell {j} exceeds the light speed {c}")));
    }
    Ok(State { t: 0.0, v })
}

/// Largest stable step `cfl * dr / max_j |b(r_j) v_j|`.
pub fn cfl_dt(state: &State, grid: &Grid, model: &BurgersModel, cfl: f64) -> f64 {
    let speed = state
        .v
        .iter()
        .zip(&grid.centers)
        .fold(0.0_f64, |m, (&v, &r)| m.max(model.characteristic_speed(v, r).abs()));
    cfl * grid.dr / speed.max(SPEED_FLOOR)
}

/// Ghost values `(v_{-1}, v_N)`.
pub fn apply_boundary(
    state: &State,
    grid: &Grid,
    boundary: &Boundary,
    model: &BurgersModel,
) -> Result<(f64, f64)> {
    match boundary {
        Boundary::Transmissive => Ok((state.v[0], state.v[state.v.len() - 1])),
        Boundary::StaticDirichlet(sol) => {
            let sol = checked_static(model, sol)?;
            Ok((
                model.static_solution(&sol, grid.left_ghost())?,
                model.static_solution(&sol, grid.right_ghost())?,
            ))
        }
        Boundary::Fixed { left, right } => Ok((*left, *right)),
    }
}

/// One explicit Lax-Friedrichs step of length `dt`:
///
/// ```text
/// v_j' = (v_{j-1} + v_{j+1}) / 2 - dt / (2 dr) * D_j + dt * S(v_j, r_j)
/// ```
///
/// with `D_j = b_{j+1} f_{j+1} - b_{j-1} f_{j-1}` (paper-literal and
/// conservative) or `D_j = b_j (f_{j+1} - f_{j-1})` (nonconservative), and
/// `f = v^2/2`. The state is returned unchecked; see [`check_state`].
pub fn lf_update(
    state: &State,
    grid: &Grid,
    model: &BurgersModel,
    mode: SchemeMode,
    boundary: &Boundary,
    dt: f64,
) -> Result<State> {
    let n = grid.n_cells;
    if state.v.len() != n {
        return Err(argument(format!("state has {} cells, grid has {n}", state.v.len())));
    }
    let (ghost_l, ghost_r) = apply_boundary(state, grid, boundary, model)?;
    let form = mode.source_form();
    let coef = dt / (2.0 * grid.dr);
    let f = |v: f64| 0.5 * v * v;

    let value = |j: isize| -> (f64, f64) {
        if j < 0 {
            (ghost_l, grid.left_ghost())
        } else if j as usize >= n {
            (ghost_r, grid.right_ghost())
        } else {
            (state.v[j as usize], grid.centers[j as usize])
        }
    };

    let mut next = Vec::with_capacity(n);
    for j in 0..n as isize {
        let (vm, rm) = value(j - 1);
        let (vp, rp) = value(j + 1);
        let (vj, rj) = value(j);
        let diff = match mode {
            SchemeMode::PaperLiteral | SchemeMode::Conservative => {
                model.flux_coefficient(rp) * f(vp) - model.flux_coefficient(rm) * f(vm)
            }
            SchemeMode::Nonconservative => model.flux_coefficient(rj) * (f(vp) - f(vm)),
        };
        let avg = 0.5 * (vm + vp);
        next.push(avg - coef * diff + dt * model.source(vj, rj, form));
    }
    Ok(State { t: state.t + dt, v: next })
}

/// [`lf_update`] with the mode and boundary of `config`, followed by
/// [`check_state`].
pub fn lf_step(
    state: &State,
    grid: &Grid,
    model: &BurgersModel,
    config: &SolverConfig,
    dt: f64,
) -> Result<State> {
    let next = lf_update(state, grid, model, config.mode, &config.boundary, dt)?;
    check_state(&next, model, 0)?;
    Ok(next)
}

/// Flags non-finite values and runaway speeds beyond `c + INSTABILITY_MARGIN`.
pub fn check_state(state: &State, model: &BurgersModel, step: usize) -> Result<()> {
    let limit = model.c() + INSTABILITY_MARGIN;
    match state.v.iter().position(|x| !(x.is_finite() && x.abs() <= limit)) {
        None => Ok(()),
        Some(cell) => Err(Error::Instability { step, t: state.t, cell, value: state.v[cell] }),
    }
}
