//! Self-check suite: identities of the geometry, the fluid and the model,
//! plus one solver run against the classical Riemann solution.

use std::f64::consts::PI;

use serde::Serialize;

use crate::experiments::l1_distance;
use crate::fluid::{divergence_residual, four_velocity, FluidPoint};
use crate::fvsolver::{initial_data, make_grid, run, InitialData, SolverConfig};
use crate::geometry::{
    christoffel_closed, christoffel_numeric, is_structurally_nonzero, metric_components,
    SpacetimeParams, DEFAULT_FD_STEP, PHI, R,
};
use crate::model::{classical_riemann_exact, Branch, BurgersModel, StaticSolution};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed error.
    pub observed: f64,
    pub tolerance: f64,
    pub detail: String,
}

/// Test hooks for the suite itself.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Added to the closed-form `Gamma^r_{phi phi}` before the oracle
    /// comparison; a nonzero value must make that check fail.
    pub christoffel_fault: f64,
}

pub const LAMBDAS: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

/// Outer radius of the sample region: 90% of the horizon radius for
/// positive lambda, 1 otherwise.
pub fn sample_r_max(lambda: f64) -> f64 {
    if lambda > 0.0 {
        0.9 / lambda.sqrt()
    } else {
        1.0
    }
}

/// `n` radii strictly inside `(0, sample_r_max)`.
pub fn sample_radii(lambda: f64, n: usize) -> Vec<f64> {
    let top = sample_r_max(lambda);
    (0..n).map(|i| top * (i as f64 + 0.5) / n as f64).collect()
}

/// `n` polar angles in `[0.2, pi - 0.2]`.
pub fn sample_angles(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.2 + (PI - 0.4) * i as f64 / (n - 1) as f64).collect()
}

fn check(name: &'static str, observed: f64, tolerance: f64, detail: String) -> CheckResult {
    CheckResult { name, passed: observed <= tolerance, observed, tolerance, detail }
}

fn params(lambda: f64) -> SpacetimeParams {
    SpacetimeParams::normalized(lambda).expect("finite lambda")
}

pub fn metric_inverse() -> CheckResult {
    let mut worst = 0.0_f64;
    let mut count = 0;
    for lambda in LAMBDAS {
        for r in sample_radii(lambda, 10) {
            for theta in sample_angles(5) {
                let m = metric_components(&params(lambda), r, theta).expect("sample is admissible");
                for i in 0..4 {
                    worst = worst.max((m.cov[i] * m.con[i] - 1.0).abs());
                }
                count += 1;
            }
        }
    }
    check("metric_inverse", worst, 1e-14, format!("{count} points, max |g_ii g^ii - 1|"))
}

pub fn christoffel_oracle(opts: &VerifyOptions) -> CheckResult {
    let mut worst = 0.0_f64;
    let mut misplaced = 0usize;
    let mut count = 0;
    for lambda in LAMBDAS {
        let p = params(lambda);
        for r in sample_radii(lambda, 10) {
            for theta in sample_angles(10) {
                let mut closed = christoffel_closed(&p, r, theta).expect("admissible");
                closed.gamma[R][PHI][PHI] += opts.christoffel_fault;
                let numeric = christoffel_numeric(&p, r, theta, DEFAULT_FD_STEP).expect("admissible");
                worst = worst.max(closed.max_abs_diff(&numeric));
                for mu in 0..4 {
                    for a in 0..4 {
                        for b in 0..4 {
                            if !is_structurally_nonzero(mu, a, b) && closed.get(mu, a, b) != 0.0 {
                                misplaced += 1;
                            }
                        }
                    }
                }
                count += 1;
            }
        }
    }
    let observed = if misplaced > 0 { f64::INFINITY } else { worst };
    check(
        "christoffel_oracle",
        observed,
        1e-6,
        format!("{count} points, h = {DEFAULT_FD_STEP}, {misplaced} nonzero entries outside the pattern"),
    )
}

pub fn four_velocity_normalization() -> CheckResult {
    let mut worst = 0.0_f64;
    for lambda in LAMBDAS {
        let p = params(lambda);
        let radii = sample_radii(lambda, 50);
        for i in 0..50 {
            let v = -0.99 + 1.98 * i as f64 / 49.0;
            for &r in &radii {
                let u = four_velocity(&p, r, v).expect("admissible");
                worst = worst.max((u.norm_sq(&p, r) + 1.0).abs());
            }
        }
    }
    check("four_velocity_normalization", worst, 1e-12, "50 x 50 (v, r) grid per lambda".into())
}

pub fn static_residual() -> CheckResult {
    let mut worst = 0.0_f64;
    let mut count = 0;
    for lambda in [-1.0, -0.5, 0.5, 1.0] {
        let m = BurgersModel::new(params(lambda));
        for k in [0.1, 0.3, 0.5, 0.9] {
            let sol = StaticSolution::new(&m, k, Branch::Positive).expect("K in range");
            for r in sample_radii(lambda, 50) {
                if m.static_radicand(&sol, r) <= 0.0 {
                    continue;
                }
                worst = worst.max(m.static_residual(&sol, r).expect("positive radicand").abs());
                count += 1;
            }
        }
    }
    check("static_residual", worst, 1e-12, format!("{count} (lambda, K, r) samples"))
}

/// The static branch is a geodesic flow; with the density that conserves
/// `r^2 rho u^r` the dust stress tensor is divergence-free.
pub fn euler_divergence() -> CheckResult {
    let mut worst = 0.0_f64;
    for lambda in [-1.0, 1.0] {
        let p = params(lambda);
        let m = BurgersModel::new(p);
        let sol = StaticSolution::new(&m, 0.5, Branch::Positive).expect("K in range");
        let field = |_t: f64, r: f64| {
            let v = m.static_solution(&sol, r).expect("inside the real branch");
            FluidPoint::dust(1.0 / (r * r * v), v)
        };
        for r in [0.3, 0.5, 0.7] {
            let (r0, r1) = divergence_residual(&p, field, 0.0, r, 1e-5).expect("admissible stencil");
            worst = worst.max(r0.abs()).max(r1.abs());
        }
    }
    check("euler_divergence", worst, 1e-6, "static dust with conserved flux, h = 1e-5".into())
}

pub fn riemann_oracle() -> CheckResult {
    let n = 400;
    let grid = make_grid(n, 0.0, 1.0).expect("valid grid");
    let m = BurgersModel::new(params(0.0));
    let init = InitialData::Riemann { left: 1.0, right: 0.0, split: 0.25 };
    let state = initial_data(&grid, &init, &m).expect("subluminal data");
    let out = run(&grid, &m, &SolverConfig::new(0.5), state).expect("stable run");
    let v = &out.last().v;
    let exact: Vec<f64> =
        grid.centers.iter().map(|&r| classical_riemann_exact(1.0, 0.0, (r - 0.25) / 0.5)).collect();
    let position = crossing(&grid.centers, v, 0.5).unwrap_or(f64::NAN);
    let offset = (position - 0.5).abs() / grid.dr;
    let l1 = l1_distance(v, &exact, grid.dr);
    let observed = if offset.is_nan() { f64::INFINITY } else { offset };
    check(
        "riemann_oracle",
        observed,
        2.0,
        format!("shock at r = {position:.5} (expected 0.5, offset in cells), L1 error {l1:.3e}"),
    )
}

/// First location where the piecewise-linear interpolant of `values`
/// crosses `level`.
pub fn crossing(centers: &[f64], values: &[f64], level: f64) -> Option<f64> {
    for j in 0..values.len().saturating_sub(1) {
        let (a, b) = (values[j] - level, values[j + 1] - level);
        if a == 0.0 {
            return Some(centers[j]);
        }
        if a * b < 0.0 {
            let w = a / (a - b);
            return Some(centers[j] + w * (centers[j + 1] - centers[j]));
        }
    }
    None
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CheckResult> {
    vec![
        metric_inverse(),
        christoffel_oracle(opts),
        four_velocity_normalization(),
        static_residual(),
        euler_divergence(),
        riemann_oracle(),
    ]
}
