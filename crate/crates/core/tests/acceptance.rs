//! Acceptance suite A1..A12. Each criterion prints one PASS/FAIL line to
//! stderr, past the test harness's output capture.

use std::io::Write;

use desitter::experiments::{l1_distance, linf_distance, preset, static_study, sweep, RAREFACTION, SHOCK};
use desitter::fvsolver::{initial_data, lf_step, make_grid, run, State};
use desitter::model::{classical_riemann_exact, SourceForm};
use desitter::verify::{self, crossing, VerifyOptions};
use desitter::*;

/// N=3200 L-infinity drift at t=0.5 for the static profile with K=0.5,
/// conservative mode, static Dirichlet ghosts. Measured once and pinned.
const DRIFT_REF_3200_NEG: f64 = 4.93e-4;
const DRIFT_REF_3200_POS: f64 = 6.44e-5;
/// Allowed excess over the first-order extrapolation `ref * 3200 / N`.
const DRIFT_SLACK: f64 = 1.1;

struct Outcome {
    id: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Default)]
struct Suite {
    outcomes: Vec<Outcome>,
    /// Peak `|v|` of every solver run in A5..A10.
    peaks: Vec<(String, f64)>,
}

impl Suite {
    fn record(&mut self, id: &'static str, passed: bool, detail: String) {
        let lead = if self.outcomes.is_empty() { "\n" } else { "" };
        let line = format!("{lead}{id:<4} {} {detail}\n", if passed { "PASS" } else { "FAIL" });
        let _ = std::io::stderr().lock().write_all(line.as_bytes());
        self.outcomes.push(Outcome { id, passed, detail });
    }

    fn peak(&mut self, label: impl Into<String>, value: f64) {
        self.peaks.push((label.into(), value));
    }
}

fn model(lambda: f64) -> BurgersModel {
    BurgersModel::new(SpacetimeParams::normalized(lambda).unwrap())
}

fn from_check(suite: &mut Suite, id: &'static str, r: verify::CheckResult) {
    let detail = format!("max err {:.3e} <= {:.0e} ({})", r.observed, r.tolerance, r.detail);
    suite.record(id, r.passed, detail);
}

fn a4(suite: &mut Suite) {
    let mut worst = 0.0_f64;
    let mut count = 0;
    for lambda in [-1.0, 1.0] {
        let m = model(lambda);
        for k in [0.1, 0.3, 0.5, 0.9] {
            let sol = StaticSolution::new(&m, k, Branch::Positive).unwrap();
            // Keep the samples where the branch is real: b(r) < c^2 / K.
            let mut top = verify::sample_r_max(lambda);
            if lambda < 0.0 {
                top = top.min(0.95 * ((1.0 / k - 1.0) / -lambda).sqrt());
            }
            for i in 0..50 {
                let r = top * (i as f64 + 0.5) / 50.0;
                worst = worst.max(m.static_residual(&sol, r).unwrap().abs());
                count += 1;
            }
        }
    }
    suite.record("A4", worst <= 1e-12, format!("max |residual| {worst:.3e} <= 1e-12 over {count} points"));
}

fn sci(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", items.join(", "))
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

fn a5(suite: &mut Suite) {
    let m = model(0.0);
    let g = make_grid(400, 0.0, 1.0).unwrap();
    let mut identical = true;
    for init in [SHOCK, RAREFACTION, InitialData::Riemann { left: 1.0, right: 0.0, split: 0.25 }] {
        let cfg = SolverConfig::new(0.5).with_uniform_snapshots(10, true);
        let outs: Vec<_> = SchemeMode::ALL
            .iter()
            .map(|&mode| {
                let out = run(&g, &m, &cfg.clone().with_mode(mode), initial_data(&g, &init, &m).unwrap()).unwrap();
                suite.peak(format!("A5 {init} {mode}"), out.peak_speed);
                out
            })
            .collect();
        for other in &outs[1..] {
            identical &= outs[0].steps == other.steps;
            for (a, b) in outs[0].snapshots.iter().zip(&other.snapshots) {
                identical &= a.t.to_bits() == b.t.to_bits() && bits(&a.v) == bits(&b.v);
            }
        }
    }
    let mut exact_terms = true;
    for i in 0..=100 {
        let r = i as f64 / 100.0;
        for j in 0..=40 {
            let v = -1.0 + j as f64 / 20.0;
            for form in [SourceForm::Conservative, SourceForm::Nonconservative, SourceForm::PaperLiteral] {
                exact_terms &= m.source(v, r, form) == 0.0;
            }
            exact_terms &= m.conservative_flux(v, r).to_bits() == (0.5 * v * v).to_bits();
        }
    }
    suite.record(
        "A5",
        identical && exact_terms,
        format!("three modes bit-identical: {identical}; source == 0 and flux == v^2/2: {exact_terms}"),
    );
}

fn a6(suite: &mut Suite) {
    let m = model(0.0);
    let init = InitialData::Riemann { left: 1.0, right: 0.0, split: 0.25 };
    let mut offsets = Vec::new();
    let mut errors = Vec::new();
    for n in [200, 400, 800] {
        let g = make_grid(n, 0.0, 1.0).unwrap();
        let out = run(&g, &m, &SolverConfig::new(0.5), initial_data(&g, &init, &m).unwrap()).unwrap();
        suite.peak(format!("A6 N={n}"), out.peak_speed);
        let v = &out.last().v;
        let exact: Vec<f64> = g.centers.iter().map(|&r| classical_riemann_exact(1.0, 0.0, (r - 0.25) / 0.5)).collect();
        let mid = crossing(&g.centers, v, 0.5).unwrap_or(f64::NAN);
        offsets.push((mid - 0.5).abs() / g.dr);
        errors.push(l1_distance(v, &exact, g.dr));
    }
    let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let passed = offsets.iter().all(|&o| o <= 2.0) && orders.iter().all(|&p| p >= 0.7);
    suite.record(
        "A6",
        passed,
        format!(
            "shock offsets {:.3?} cells (<= 2); L1 errors {}; orders {:.3?} (>= 0.7)",
            offsets,
            sci(&errors),
            orders
        ),
    );
}

fn a7(suite: &mut Suite) {
    let mut passed = true;
    let mut parts = Vec::new();
    for (lambda, r_max, reference) in [
        (-1.0, experiments::STATIC_NEGATIVE_LAMBDA_R_MAX, DRIFT_REF_3200_NEG),
        (1.0, 1.0, DRIFT_REF_3200_POS),
    ] {
        let m = model(lambda);
        let sol = StaticSolution::new(&m, 0.5, Branch::Positive).unwrap();
        let mut drifts = Vec::new();
        for n in [400, 800, 1600, 3200] {
            let g = make_grid(n, 0.0, r_max).unwrap();
            let study = static_study(&g, &m, sol, &SolverConfig::new(0.5)).unwrap();
            if n < 3200 {
                suite.peak(format!("A7 L={lambda} N={n}"), study.output.peak_speed);
            }
            let d = study.final_linf();
            passed &= d <= DRIFT_SLACK * reference * 3200.0 / n as f64;
            drifts.push(d);
        }
        let ratios: Vec<f64> = drifts[..3].windows(2).map(|w| w[1] / w[0]).collect();
        passed &= ratios.iter().all(|&q| q <= 0.7);
        passed &= drifts[3] <= reference;
        parts.push(format!("L={lambda} on [0,{r_max}]: drifts {} ratios {ratios:.3?}", sci(&drifts)));
    }
    suite.record("A7", passed, parts.join("; "));
}

fn a8(suite: &mut Suite) {
    let m = model(0.0);
    let sol = StaticSolution::new(&m, 0.9, Branch::Positive).unwrap();
    let g = make_grid(400, 0.0, 1.0).unwrap();
    let cfg = SolverConfig::new(1.0).with_uniform_snapshots(100, true);
    let study = static_study(&g, &m, sol, &cfg).unwrap();
    suite.peak("A8", study.output.peak_speed);
    let initial = study.exact[0];
    let value_ok = (initial - 0.3162).abs() < 5e-5 && (initial - 0.1_f64.sqrt()).abs() <= 1e-15;
    let worst = study.drift.iter().fold(0.0_f64, |a, d| a.max(d.linf));
    suite.record(
        "A8",
        value_ok && worst <= 1e-13,
        format!("initial value {initial:.6}; max L-inf drift {worst:.3e} <= 1e-13 over {} snapshots", study.drift.len()),
    );
}

fn comparison_sweep(suite: &mut Suite, name: &str, lambdas: &[f64]) -> desitter::experiments::Sweep {
    let p = preset(name).unwrap();
    let g = p.grid().unwrap();
    let s = sweep(&g, 1.0, lambdas, &p.solver_config(), &p.init).unwrap();
    for r in &s.runs {
        suite.peak(format!("{name} L={}", r.lambda), r.output.peak_speed);
    }
    s
}

fn strictly_increasing(d: &[f64]) -> bool {
    d.windows(2).all(|w| w[1] > w[0])
}

fn a9_a10(suite: &mut Suite) {
    let mut mono = true;
    let mut parts = Vec::new();
    let mut faster = true;
    let mut finals = Vec::new();
    for (name, lambda) in [("fig1", 1.0), ("fig2", 1.0), ("fig3", -1.0), ("fig4", -1.0)] {
        let s = comparison_sweep(suite, name, &[0.0, lambda, 0.5 * lambda]);
        let d = s.distances(lambda);
        mono &= d.len() >= 5 && strictly_increasing(&d);
        parts.push(format!("{name} L={lambda}: {} times, final {:.3e}", d.len(), d[d.len() - 1]));
        if lambda > 0.0 {
            let full = *d.last().unwrap();
            let half = *s.distances(0.5).last().unwrap();
            faster &= full >= half;
            finals.push(format!("{name}: L=1 {full:.3e} vs L=0.5 {half:.3e}"));
        }
    }
    suite.record("A9", mono, parts.join("; "));
    suite.record("A10", faster, finals.join("; "));
}

fn a11(suite: &mut Suite) {
    let (label, worst) = suite
        .peaks
        .iter()
        .cloned()
        .fold((String::new(), 0.0_f64), |acc, (l, p)| if p > acc.1 { (l, p) } else { acc });
    let count = suite.peaks.len();
    suite.record("A11", worst <= 1.0 + 1e-9, format!("max |v| {worst:.6} (in {label}) over {count} runs, c = 1"));
}

fn a12(suite: &mut Suite) {
    let m = model(1.0);
    let g = make_grid(200, 0.0, 1.0).unwrap();
    let v: Vec<f64> = g.centers.iter().map(|&r| 0.3 + 0.4 * (6.0 * r).sin() * r).collect();
    let state = State { t: 0.0, v };
    let base = SolverConfig::new(1.0);
    let dt = fvsolver::cfl_dt(&state, &g, &m, base.cfl);
    let lit = lf_step(&state, &g, &m, &base.clone().with_mode(SchemeMode::PaperLiteral), dt).unwrap();
    let con = lf_step(&state, &g, &m, &base.with_mode(SchemeMode::Conservative), dt).unwrap();
    let mut worst = 0.0_f64;
    for j in 0..g.n_cells {
        let expected = dt * m.lambda() * g.centers[j] * state.v[j] * state.v[j];
        worst = worst.max((lit.v[j] - con.v[j] - expected).abs());
    }
    suite.record("A12", worst <= 1e-15, format!("max |diff - dt L r v^2| {worst:.3e} <= 1e-15, dt = {dt:.3e}"));
}

#[test]
fn acceptance_criteria() {
    let mut suite = Suite::default();
    let opts = VerifyOptions::default();
    from_check(&mut suite, "A1", verify::metric_inverse());
    from_check(&mut suite, "A2", verify::christoffel_oracle(&opts));
    from_check(&mut suite, "A3", verify::four_velocity_normalization());
    a4(&mut suite);
    a5(&mut suite);
    a6(&mut suite);
    a7(&mut suite);
    a8(&mut suite);
    a9_a10(&mut suite);
    a11(&mut suite);
    a12(&mut suite);

    let failed: Vec<String> =
        suite.outcomes.iter().filter(|o| !o.passed).map(|o| format!("{}: {}", o.id, o.detail)).collect();
    assert_eq!(suite.outcomes.len(), 12);
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}

#[test]
fn linf_helper_matches_definition() {
    assert_eq!(linf_distance(&[0.0, 2.0], &[1.0, 0.5]), 1.5);
}
