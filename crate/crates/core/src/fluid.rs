//! Perfect fluid on the static de Sitter background.
//!
//! The flow is radial, so the four-velocity is `(u0, u1, 0, 0)`. The
//! coordinate velocity `v = c u1 / ((1 - L r^2) u0)` is the unknown that the
//! scalar Burgers model evolves.

use crate::error::{argument, domain, Result};
use crate::geometry::{christoffel_closed, SpacetimeParams, EQUATOR};

/// Density, pressure and coordinate velocity at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidPoint {
    pub rho: f64,
    pub p: f64,
    pub v: f64,
}

impl FluidPoint {
    pub fn dust(rho: f64, v: f64) -> Self {
        Self { rho, p: 0.0, v }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVelocity {
    pub u0: f64,
    pub u1: f64,
}

impl FourVelocity {
    /// `g_ab u^a u^b`, which is `-1` for a unit timelike vector.
    pub fn norm_sq(&self, params: &SpacetimeParams, r: f64) -> f64 {
        let b = params.lapse_sq(r);
        -b * self.u0 * self.u0 + self.u1 * self.u1 / b
    }

    /// Recovers the coordinate velocity.
    pub fn coordinate_velocity(&self, params: &SpacetimeParams, r: f64) -> f64 {
        params.c * self.u1 / (params.lapse_sq(r) * self.u0)
    }
}

/// Nonzero contravariant components of `T^{ab}`; `T^{10} = T^{01}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressEnergy {
    pub t00: f64,
    pub t01: f64,
    pub t11: f64,
    pub t22: f64,
    pub t33: f64,
}

impl StressEnergy {
    /// Dense 4x4 form.
    pub fn to_matrix(&self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        m[0][0] = self.t00;
        m[0][1] = self.t01;
        m[1][0] = self.t01;
        m[1][1] = self.t11;
        m[2][2] = self.t22;
        m[3][3] = self.t33;
        m
    }
}

fn check_subluminal(params: &SpacetimeParams, v: f64) -> Result<()> {
    if !(v.is_finite() && v.abs() < params.c) {
        return Err(domain(format!("|v| = {} is not below c = {}", v.abs(), params.c)));
    }
    Ok(())
}

/// Future-directed unit four-velocity for coordinate velocity `v`.
///
/// The normalization fixes only `u1^2`; the sign of `u1` follows `v`.
pub fn four_velocity(params: &SpacetimeParams, r: f64, v: f64) -> Result<FourVelocity> {
    params.check_radius(r)?;
    check_subluminal(params, v)?;
    let c = params.c;
    let b = params.lapse_sq(r);
    let gap = c * c - v * v;
    Ok(FourVelocity {
        u0: c / (b * gap).sqrt(),
        u1: v * b.sqrt() / gap.sqrt(),
    })
}

/// `T^{ab} = (rho c^2 + p) u^a u^b + p g^{ab}` in closed form.
pub fn stress_energy(
    params: &SpacetimeParams,
    r: f64,
    theta: f64,
    fp: FluidPoint,
) -> Result<StressEnergy> {
    params.check_radius(r)?;
    check_subluminal(params, fp.v)?;
    let s = theta.sin();
    if r == 0.0 || s == 0.0 {
        return Err(domain(format!("angular stress components are singular at r = {r}, theta = {theta}")));
    }
    let FluidPoint { rho, p, v } = fp;
    let c = params.c;
    let c2 = c * c;
    let b = params.lapse_sq(r);
    let gap = c2 - v * v;
    Ok(StressEnergy {
        t00: (rho * c2 * c2 + p * v * v) / (gap * b),
        t01: c * v * (rho * c2 + p) / gap,
        t11: c2 * b * (v * v * rho + p) / gap,
        t22: p / (r * r),
        t33: p / (r * r * s * s),
    })
}

/// Default step for [`divergence_residual`].
pub const DEFAULT_RESIDUAL_STEP: f64 = 1e-4;

/// Residual of `nabla_a T^{ab} = 0` for `b = 0` and `b = 1` at `(t, r)` on the
/// equator:
///
/// `d_a T^{ab} + Gamma^a_{ag} T^{gb} + Gamma^b_{ag} T^{ag}`
///
/// `fields` maps `(t, r)` to the local fluid state. Time and radial
/// derivatives are second-order central differences with step `h`; the time
/// coordinate is `x0 = c t`. Angular derivatives vanish by symmetry.
pub fn divergence_residual<F>(
    params: &SpacetimeParams,
    fields: F,
    t: f64,
    r: f64,
    h: f64,
) -> Result<(f64, f64)>
where
    F: Fn(f64, f64) -> FluidPoint,
{
    if !(h.is_finite() && h > 0.0) {
        return Err(argument(format!("finite-difference step must be positive, got {h}")));
    }
    if r - h <= 0.0 {
        return Err(domain(format!("radial stencil r - h = {} crosses the origin", r - h)));
    }
    let tensor = |t: f64, r: f64| -> Result<[[f64; 4]; 4]> {
        Ok(stress_energy(params, r, EQUATOR, fields(t, r))?.to_matrix())
    };

    let centre = tensor(t, r)?;
    let t_plus = tensor(t + h, r)?;
    let t_minus = tensor(t - h, r)?;
    let r_plus = tensor(t, r + h)?;
    let r_minus = tensor(t, r - h)?;
    let gamma = christoffel_closed(params, r, EQUATOR)?;

    let dx0 = 2.0 * h * params.c;
    let dx1 = 2.0 * h;
    let mut out = [0.0; 2];
    for (beta, res) in out.iter_mut().enumerate() {
        let mut sum = (t_plus[0][beta] - t_minus[0][beta]) / dx0
            + (r_plus[1][beta] - r_minus[1][beta]) / dx1;
        for g in 0..4 {
            sum += gamma.trace(g) * centre[g][beta];
        }
        for a in 0..4 {
            for g in 0..4 {
                sum += gamma.get(beta, a, g) * centre[a][g];
            }
        }
        *res = sum;
    }
    Ok((out[0], out[1]))
}
