//! Scalar relativistic Burgers model on de Sitter:
//!
//! ```text
//! v_t + d_r((1 - L r^2) v^2 / 2) = L r (c^2 - 2 v^2)
//! ```
//!
//! together with its static family and the classical (`L = 0`) Riemann
//! solution used as a reference.

use serde::{Deserialize, Serialize};

use crate::error::{argument, domain, Result};
use crate::geometry::SpacetimeParams;

/// Which source term is paired with which flux differencing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceForm {
    /// `L r (c^2 - 2 v^2)`, matching the divergence-form flux.
    Conservative,
    /// `L r (c^2 - v^2)`, matching `(1 - L r^2) d_r(v^2/2)`.
    Nonconservative,
    /// `L r (c^2 - v^2)` paired with divergence-form flux differencing, as
    /// in the published Lax-Friedrichs update.
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BurgersModel {
    pub params: SpacetimeParams,
}

impl BurgersModel {
    pub fn new(params: SpacetimeParams) -> Self {
        Self { params }
    }

    /// Checks that every radius in `points` is strictly inside the horizon.
    pub fn check_points(&self, points: impl IntoIterator<Item = f64>) -> Result<()> {
        points.into_iter().try_for_each(|r| self.params.check_radius(r))
    }

    pub fn c(&self) -> f64 {
        self.params.c
    }

    pub fn lambda(&self) -> f64 {
        self.params.lambda
    }

    /// `b(r) = 1 - L r^2`.
    #[inline]
    pub fn flux_coefficient(&self, r: f64) -> f64 {
        self.params.lapse_sq(r)
    }

    /// `b(r) v^2 / 2`.
    #[inline]
    pub fn conservative_flux(&self, v: f64, r: f64) -> f64 {
        self.flux_coefficient(r) * (0.5 * v * v)
    }

    #[inline]
    pub fn source(&self, v: f64, r: f64, form: SourceForm) -> f64 {
        let c2 = self.params.c * self.params.c;
        let l = self.params.lambda;
        match form {
            SourceForm::Conservative => l * r * (c2 - 2.0 * v * v),
            SourceForm::Nonconservative | SourceForm::PaperLiteral => l * r * (c2 - v * v),
        }
    }

    /// `dF/dv = b(r) v`.
    #[inline]
    pub fn characteristic_speed(&self, v: f64, r: f64) -> f64 {
        self.flux_coefficient(r) * v
    }

    /// `c^2 - K b(r)`; negative where the static branch is imaginary.
    pub fn static_radicand(&self, sol: &StaticSolution, r: f64) -> f64 {
        self.params.c * self.params.c - sol.k * self.flux_coefficient(r)
    }

    pub fn static_solution(&self, sol: &StaticSolution, r: f64) -> Result<f64> {
        let rad = self.static_radicand(sol, r);
        if !(rad >= 0.0) {
            return Err(domain(format!(
                "static solution with K = {} is imaginary at r = {r} (radicand {rad})",
                sol.k
            )));
        }
        Ok(sol.branch.sign() * rad.sqrt())
    }

    /// `d_r(b v^2/2) - S(v, r)` for the conservative source, given `v` and
    /// `dv/dr` at `r`. Zero exactly when `v` is a steady state.
    pub fn steady_residual(&self, v: f64, dv_dr: f64, r: f64) -> f64 {
        let l = self.params.lambda;
        let lhs = -l * r * v * v + self.flux_coefficient(r) * v * dv_dr;
        lhs - self.source(v, r, SourceForm::Conservative)
    }

    /// Steady-state residual of the static branch, with its derivative
    /// `v' = K L r / v` taken analytically.
    pub fn static_residual(&self, sol: &StaticSolution, r: f64) -> Result<f64> {
        let rad = self.static_radicand(sol, r);
        if !(rad > 0.0) {
            return Err(domain(format!(
                "static residual needs a positive radicand, got {rad} at r = {r}"
            )));
        }
        let v = self.static_solution(sol, r)?;
        let dv = sol.k * self.params.lambda * r / v;
        Ok(self.steady_residual(v, dv, r))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Positive => 1.0,
            Branch::Negative => -1.0,
        }
    }
}

/// `v = +-sqrt(c^2 - K (1 - L r^2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StaticSolution {
    pub k: f64,
    pub branch: Branch,
}

impl StaticSolution {
    /// `K` is a squared velocity and must lie in `(0, c^2]`.
    pub fn new(model: &BurgersModel, k: f64, branch: Branch) -> Result<Self> {
        let c2 = model.c() * model.c();
        if !(k > 0.0 && k <= c2) {
            return Err(argument(format!("static constant K = {k} must lie in (0, c^2 = {c2}]")));
        }
        Ok(Self { k, branch })
    }
}

/// Entropy solution of the classical Burgers Riemann problem
/// `v_t + (v^2/2)_r = 0` at similarity coordinate `xi = (r - r_split) / t`.
pub fn classical_riemann_exact(v_left: f64, v_right: f64, xi: f64) -> f64 {
    if v_left > v_right {
        let shock_speed = 0.5 * (v_left + v_right);
        if xi < shock_speed {
            v_left
        } else {
            v_right
        }
    } else if xi <= v_left {
        v_left
    } else if xi >= v_right {
        v_right
    } else {
        xi
    }
}
