//! Static de Sitter geometry: metric, inverse metric and Levi-Civita connection.
//!
//! Coordinates are `(x0, x1, x2, x3) = (ct, r, theta, phi)`. The metric is
//! diagonal and depends on `r` and `theta` only:
//!
//! ```text
//! g = -(1 - L r^2) dx0^2 + dr^2 / (1 - L r^2) + r^2 (dtheta^2 + sin^2(theta) dphi^2)
//! ```
//!
//! `L = 0` is flat space in spherical coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{argument, domain, Result};

/// Coordinate index of time.
pub const T: usize = 0;
/// Coordinate index of the radial direction.
pub const R: usize = 1;
/// Coordinate index of the polar angle.
pub const THETA: usize = 2;
/// Coordinate index of the azimuthal angle.
pub const PHI: usize = 3;

/// Polar angle used by every solver-facing evaluation (`sin = 1`).
pub const EQUATOR: f64 = std::f64::consts::FRAC_PI_2;

/// Default central-difference step for [`christoffel_numeric`].
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Cosmological constant and light speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimeParams {
    pub lambda: f64,
    pub c: f64,
}

impl SpacetimeParams {
    pub fn new(lambda: f64, c: f64) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(argument(format!("cosmological constant must be finite, got {lambda}")));
        }
        if !(c.is_finite() && c > 0.0) {
            return Err(argument(format!("light speed must be positive, got {c}")));
        }
        Ok(Self { lambda, c })
    }

    /// Normalized light speed `c = 1`.
    pub fn normalized(lambda: f64) -> Result<Self> {
        Self::new(lambda, 1.0)
    }

    /// The recurring factor `1 - L r^2`.
    #[inline]
    pub fn lapse_sq(&self, r: f64) -> f64 {
        1.0 - self.lambda * r * r
    }

    /// Rejects radii on or beyond the horizon.
    pub fn check_radius(&self, r: f64) -> Result<()> {
        let b = self.lapse_sq(r);
        if !(r.is_finite() && b > 0.0) {
            return Err(domain(format!(
                "r = {r} is not inside the horizon for lambda = {} (1 - lambda r^2 = {b})",
                self.lambda
            )));
        }
        Ok(())
    }
}

/// Diagonal metric components at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricDiagonal {
    /// `g_00, g_11, g_22, g_33`
    pub cov: [f64; 4],
    /// `g^00, g^11, g^22, g^33`
    pub con: [f64; 4],
}

/// Covariant diagonal only. Defined on the axis and at the origin.
pub fn covariant_metric(params: &SpacetimeParams, r: f64, theta: f64) -> Result<[f64; 4]> {
    params.check_radius(r)?;
    let b = params.lapse_sq(r);
    let s = theta.sin();
    Ok([-b, 1.0 / b, r * r, r * r * s * s])
}

/// Covariant and contravariant diagonal entries.
///
/// The contravariant angular entries divide by `r^2 sin^2(theta)`, so the
/// origin and the polar axis are rejected here; use [`covariant_metric`]
/// when only `g_ab` is needed.
pub fn metric_components(params: &SpacetimeParams, r: f64, theta: f64) -> Result<MetricDiagonal> {
    check_angular(r, theta)?;
    let cov = covariant_metric(params, r, theta)?;
    let b = params.lapse_sq(r);
    let s = theta.sin();
    let con = [1.0 / (params.lambda * r * r - 1.0), b, 1.0 / (r * r), 1.0 / (r * r * s * s)];
    Ok(MetricDiagonal { cov, con })
}

fn check_angular(r: f64, theta: f64) -> Result<()> {
    if r == 0.0 {
        return Err(domain("r = 0: angular metric entries are singular"));
    }
    if !theta.is_finite() || theta.sin() == 0.0 || theta <= 0.0 || theta >= std::f64::consts::PI {
        return Err(domain(format!("theta = {theta} lies on the polar axis")));
    }
    Ok(())
}

/// Connection coefficients `gamma[mu][alpha][beta]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelTable {
    pub gamma: [[[f64; 4]; 4]; 4],
}

impl ChristoffelTable {
    pub fn zeros() -> Self {
        Self { gamma: [[[0.0; 4]; 4]; 4] }
    }

    #[inline]
    pub fn get(&self, mu: usize, alpha: usize, beta: usize) -> f64 {
        self.gamma[mu][alpha][beta]
    }

    fn set_sym(&mut self, mu: usize, alpha: usize, beta: usize, value: f64) {
        self.gamma[mu][alpha][beta] = value;
        self.gamma[mu][beta][alpha] = value;
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for mu in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    worst = worst.max((self.gamma[mu][a][b] - other.gamma[mu][a][b]).abs());
                }
            }
        }
        worst
    }

    /// Contraction `Gamma^a_{a gamma}`.
    pub fn trace(&self, gamma_idx: usize) -> f64 {
        (0..4).map(|a| self.gamma[a][a][gamma_idx]).sum()
    }
}

/// Index triples `(mu, alpha, beta)` that may be nonzero for this metric,
/// symmetric duplicates included (13 entries).
pub const NONZERO_PATTERN: [(usize, usize, usize); 13] = [
    (T, T, R),
    (T, R, T),
    (R, R, R),
    (R, T, T),
    (R, THETA, THETA),
    (R, PHI, PHI),
    (THETA, R, THETA),
    (THETA, THETA, R),
    (PHI, R, PHI),
    (PHI, PHI, R),
    (THETA, PHI, PHI),
    (PHI, THETA, PHI),
    (PHI, PHI, THETA),
];

pub fn is_structurally_nonzero(mu: usize, alpha: usize, beta: usize) -> bool {
    NONZERO_PATTERN.contains(&(mu, alpha, beta))
}

/// Closed-form connection of the static de Sitter metric.
pub fn christoffel_closed(params: &SpacetimeParams, r: f64, theta: f64) -> Result<ChristoffelTable> {
    params.check_radius(r)?;
    check_angular(r, theta)?;
    let l = params.lambda;
    let (s, c) = theta.sin_cos();
    let mut table = ChristoffelTable::zeros();
    table.set_sym(T, T, R, l * r / (l * r * r - 1.0));
    table.set_sym(R, R, R, l * r / (1.0 - l * r * r));
    table.set_sym(R, T, T, l * r * (l * r * r - 1.0));
    table.set_sym(R, THETA, THETA, r * (l * r * r - 1.0));
    table.set_sym(R, PHI, PHI, r * (l * r * r - 1.0) * s * s);
    table.set_sym(THETA, R, THETA, 1.0 / r);
    table.set_sym(PHI, R, PHI, 1.0 / r);
    table.set_sym(THETA, PHI, PHI, -s * c);
    table.set_sym(PHI, THETA, PHI, c / s);
    Ok(table)
}

/// Connection from central differences of the metric:
/// `Gamma^mu_ab = 1/2 g^{mu mu} (d_a g_{mu b} + d_b g_{a mu} - d_mu g_ab)`.
///
/// The metric does not depend on `x0` or `phi`, so those derivatives are
/// exactly zero and only the `r` and `theta` stencils are evaluated.
pub fn christoffel_numeric(
    params: &SpacetimeParams,
    r: f64,
    theta: f64,
    h: f64,
) -> Result<ChristoffelTable> {
    if !(h.is_finite() && h > 0.0) {
        return Err(argument(format!("finite-difference step must be positive, got {h}")));
    }
    let inv = metric_components(params, r, theta)?;
    if r - h <= 0.0 {
        return Err(domain(format!("radial stencil r - h = {} crosses the origin", r - h)));
    }
    check_angular(r, theta - h)?;
    check_angular(r, theta + h)?;

    // dg[k][a] = d_k g_aa
    let mut dg = [[0.0; 4]; 4];
    let rp = covariant_metric(params, r + h, theta)?;
    let rm = covariant_metric(params, r - h, theta)?;
    let tp = covariant_metric(params, r, theta + h)?;
    let tm = covariant_metric(params, r, theta - h)?;
    for a in 0..4 {
        dg[R][a] = (rp[a] - rm[a]) / (2.0 * h);
        dg[THETA][a] = (tp[a] - tm[a]) / (2.0 * h);
    }

    // d_k g_ab for a diagonal metric
    let d = |k: usize, a: usize, b: usize| if a == b { dg[k][a] } else { 0.0 };

    let mut table = ChristoffelTable::zeros();
    for mu in 0..4 {
        for a in 0..4 {
            for b in 0..4 {
                let sum = d(a, mu, b) + d(b, a, mu) - d(mu, a, b);
                table.gamma[mu][a][b] = 0.5 * inv.con[mu] * sum;
            }
        }
    }
    Ok(table)
}
