use desitter::experiments::static_study;
use desitter::fluid::{divergence_residual, FluidPoint};
use desitter::fvsolver::{lf_update, make_grid, Grid};
use desitter::*;

fn model(lambda: f64) -> BurgersModel {
    BurgersModel::new(SpacetimeParams::normalized(lambda).unwrap())
}

/// Static dust whose density conserves the radial mass flux has a vanishing
/// divergence; the residual shrinks at second order in the stencil step.
#[test]
fn static_dust_with_conserved_flux_is_divergence_free() {
    for lambda in [-1.0, 1.0] {
        let p = SpacetimeParams::normalized(lambda).unwrap();
        let m = BurgersModel::new(p);
        let sol = StaticSolution::new(&m, 0.5, Branch::Positive).unwrap();
        let field = |_t: f64, r: f64| {
            let v = m.static_solution(&sol, r).unwrap();
            FluidPoint::dust(1.0 / (r * r * v), v)
        };
        let coarse = divergence_residual(&p, field, 0.0, 0.5, 1e-4).unwrap();
        let fine = divergence_residual(&p, field, 0.0, 0.5, 5e-5).unwrap();
        for (a, b) in [(coarse.0, fine.0), (coarse.1, fine.1)] {
            assert!(b.abs() < 1e-5, "L={lambda}: {b}");
            if b.abs() > 1e-12 {
                assert!((a / b).abs().log2() >= 1.9, "L={lambda}: {a} -> {b}");
            }
        }
    }
}

/// Constant density is not mass-conserving on the static branch: the radial
/// residual is `(c^2 rho / K)(K L r + 2 v^2 / r)` instead of zero.
#[test]
fn static_dust_with_constant_density_has_known_residual() {
    for (lambda, limit) in [(-1.0, 2.5), (1.0, 5.5)] {
        let p = SpacetimeParams::normalized(lambda).unwrap();
        let m = BurgersModel::new(p);
        let sol = StaticSolution::new(&m, 0.5, Branch::Positive).unwrap();
        let r = 0.5;
        let v = m.static_solution(&sol, r).unwrap();
        let analytic = (1.0 / 0.5) * (0.5 * lambda * r + 2.0 * v * v / r);
        assert!((analytic - limit).abs() < 1e-12);

        let field = |_t: f64, r: f64| FluidPoint::dust(1.0, m.static_solution(&sol, r).unwrap());
        for h in [1e-3, 1e-4] {
            let got = divergence_residual(&p, field, 0.0, r, h).unwrap().1;
            assert!((got - limit).abs() < 1e-8, "L={lambda}, h={h}: {got}");
        }
    }
}

fn profile(r: f64) -> f64 {
    0.3 + 0.2 * (2.0 * std::f64::consts::PI * r).sin()
}

fn profile_dr(r: f64) -> f64 {
    0.4 * std::f64::consts::PI * (2.0 * std::f64::consts::PI * r).cos()
}

/// Right-hand side `dv/dt` of the PDE each mode discretizes.
fn rhs(m: &BurgersModel, mode: SchemeMode, r: f64) -> f64 {
    let (v, dv) = (profile(r), profile_dr(r));
    let lam = m.lambda();
    let b = 1.0 - lam * r * r;
    let c2 = m.c() * m.c();
    match mode {
        // d/dr (b v^2 / 2) = -L r v^2 + b v v'
        SchemeMode::Conservative => -(-lam * r * v * v + b * v * dv) + lam * r * (c2 - 2.0 * v * v),
        SchemeMode::PaperLiteral => -(-lam * r * v * v + b * v * dv) + lam * r * (c2 - v * v),
        SchemeMode::Nonconservative => -b * v * dv + lam * r * (c2 - v * v),
    }
}

/// L1 norm of `(lf_update(v) - v) / dt - rhs` on the profile, with ghosts
/// fixed at the exact values.
fn consistency_error(m: &BurgersModel, mode: SchemeMode, pde: SchemeMode, n: usize) -> f64 {
    let g: Grid = make_grid(n, 0.0, 0.9).unwrap();
    let state = State { t: 0.0, v: g.centers.iter().map(|&r| profile(r)).collect() };
    let ghosts = Boundary::Fixed { left: profile(g.left_ghost()), right: profile(g.right_ghost()) };
    let dt = 0.4 * g.dr;
    let next = lf_update(&state, &g, m, mode, &ghosts, dt).unwrap();
    g.centers
        .iter()
        .enumerate()
        .map(|(j, &r)| ((next.v[j] - state.v[j]) / dt - rhs(m, pde, r)).abs() * g.dr)
        .sum()
}

#[test]
fn every_mode_is_first_order_consistent_with_its_equation() {
    for lambda in [-1.0, 1.0] {
        let m = model(lambda);
        for mode in SchemeMode::ALL {
            let e: Vec<f64> = [100, 200, 400].iter().map(|&n| consistency_error(&m, mode, mode, n)).collect();
            for w in e.windows(2) {
                let order = (w[0] / w[1]).log2();
                assert!(order >= 0.8, "L={lambda} {mode}: errors {e:?}");
            }
        }
    }
}

/// The paper-literal pairing does not approximate the conservative
/// equation: its defect tends to the L1 norm of `L r v^2`.
#[test]
fn paper_literal_is_inconsistent_with_conservative_equation() {
    let m = model(1.0);
    let g = make_grid(1600, 0.0, 0.9).unwrap();
    let gap: f64 = g.centers.iter().map(|&r| r * profile(r).powi(2) * g.dr).sum();
    let e = consistency_error(&m, SchemeMode::PaperLiteral, SchemeMode::Conservative, 1600);
    assert!((e - gap).abs() < 0.05 * gap, "defect {e}, gap {gap}");
}

#[test]
fn nonconservative_mode_preserves_static_solutions() {
    for (lambda, r_max) in [(-1.0, experiments::STATIC_NEGATIVE_LAMBDA_R_MAX), (1.0, 1.0)] {
        let m = model(lambda);
        let sol = StaticSolution::new(&m, 0.5, Branch::Positive).unwrap();
        let cfg = SolverConfig::new(0.5).with_mode(SchemeMode::Nonconservative);
        let drift: Vec<f64> = [200, 400, 800]
            .iter()
            .map(|&n| static_study(&make_grid(n, 0.0, r_max).unwrap(), &m, sol, &cfg).unwrap().final_linf())
            .collect();
        for w in drift.windows(2) {
            assert!(w[1] <= 0.7 * w[0], "L={lambda}: {drift:?}");
        }
    }
}

/// Under the paper-literal pairing the static profile is not a steady
/// state of the scheme: for L = -1 the drift stays O(1) under refinement.
#[test]
fn paper_literal_mode_does_not_preserve_static_solutions() {
    let m = model(-1.0);
    let sol = StaticSolution::new(&m, 0.5, Branch::Positive).unwrap();
    let cfg = SolverConfig::new(0.5).with_mode(SchemeMode::PaperLiteral);
    let drift: Vec<f64> = [200, 400]
        .iter()
        .map(|&n| {
            let g = make_grid(n, 0.0, experiments::STATIC_NEGATIVE_LAMBDA_R_MAX).unwrap();
            static_study(&g, &m, sol, &cfg).unwrap().final_linf()
        })
        .collect();
    assert!(drift.iter().all(|&d| d > 0.05), "{drift:?}");
    assert!(drift[1] > 0.7 * drift[0], "{drift:?}");
}

#[test]
fn paper_literal_mode_leaves_the_light_cone_for_positive_lambda() {
    let m = model(1.0);
    let sol = StaticSolution::new(&m, 0.5, Branch::Positive).unwrap();
    let cfg = SolverConfig::new(0.5).with_mode(SchemeMode::PaperLiteral);
    let err = static_study(&make_grid(400, 0.0, 1.0).unwrap(), &m, sol, &cfg).unwrap_err();
    assert!(matches!(err, Error::Instability { .. }), "{err}");
}
