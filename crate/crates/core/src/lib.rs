//! Relativistic Burgers equation on a (1+1)-dimensional de Sitter background.
//!
//! The crate follows the model from the spacetime down to the scheme:
//!
//! * [`geometry`]: metric and connection of the static de Sitter chart,
//! * [`fluid`]: perfect-fluid four-velocity, stress-energy tensor and the
//!   residual of its covariant divergence,
//! * [`model`]: the scalar balance law, its static solutions and the
//!   classical Riemann solution,
//! * [`fvsolver`]: the Lax-Friedrichs finite-volume scheme,
//! * [`experiments`]: Lambda sweeps, static-preservation studies and the
//!   figure presets built on top of the solver,
//! * [`verify`]: the self-check suite behind `desitter verify`.

pub mod error;
pub mod experiments;
pub mod fluid;
pub mod fvsolver;
pub mod geometry;
pub mod model;
pub mod verify;

pub use error::{Error, Result};
pub use fvsolver::{Boundary, Grid, InitialData, SchemeMode, SolverConfig, State};
pub use geometry::SpacetimeParams;
pub use model::{Branch, BurgersModel, StaticSolution};
