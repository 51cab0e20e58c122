use serde::{Deserialize, Serialize};

use crate::error::{argument, Result};

/// Uniform cell-centred radial mesh on `[r_min, r_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub n_cells: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub dr: f64,
    pub centers: Vec<f64>,
}

/// The three-point stencil needs at least this many cells.
pub const MIN_CELLS: usize = 3;

pub fn make_grid(n_cells: usize, r_min: f64, r_max: f64) -> Result<Grid> {
    if n_cells < MIN_CELLS {
        return Err(argument(format!("need at least {MIN_CELLS} cells, got {n_cells}")));
    }
    if !(r_min.is_finite() && r_max.is_finite() && r_max > r_min) {
        return Err(argument(format!("invalid radial domain [{r_min}, {r_max}]")));
    }
    let dr = (r_max - r_min) / n_cells as f64;
    let centers = (0..n_cells).map(|j| r_min + (j as f64 + 0.5) * dr).collect();
    Ok(Grid { n_cells, r_min, r_max, dr, centers })
}

impl Grid {
    /// Centre of the ghost cell left of cell 0.
    pub fn left_ghost(&self) -> f64 {
        self.r_min - 0.5 * self.dr
    }

    /// Centre of the ghost cell right of the last cell.
    pub fn right_ghost(&self) -> f64 {
        self.r_max + 0.5 * self.dr
    }

    pub fn len(&self) -> usize {
        self.n_cells
    }

    pub fn is_empty(&self) -> bool {
        self.n_cells == 0
    }
}
