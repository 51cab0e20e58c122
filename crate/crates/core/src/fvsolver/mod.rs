//! Explicit Lax-Friedrichs finite-volume solver on a uniform radial grid.

mod config;
mod grid;
mod run;
mod scheme;

pub use config::{Boundary, InitialData, SchemeMode, SolverConfig, DEFAULT_CFL};
pub use grid::{make_grid, Grid, MIN_CELLS};
pub use run::{run, validate_setup, RunOutput, SnapshotMetrics};
pub use scheme::{
    apply_boundary, cfl_dt, check_state, initial_data, lf_step, lf_update, State, INSTABILITY_MARGIN,
    SPEED_FLOOR,
};
