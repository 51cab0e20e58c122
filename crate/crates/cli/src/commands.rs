use std::path::Path;

use serde::Serialize;

use desitter::experiments::{static_study, sweep};
use desitter::fvsolver::{initial_data, run};
use desitter::verify::{run_all, CheckResult, VerifyOptions};
use desitter::{Boundary, Error, InitialData, SchemeMode};

use crate::config::{parse_list, RunConfig, Settings};
use crate::output::{drift_csv, metrics_csv, profile_csv, write, write_json, write_run};
use crate::Failure;

pub fn verify(json: bool, christoffel_fault: f64) -> Result<(), Failure> {
    let results = run_all(&VerifyOptions { christoffel_fault });
    if json {
        let text = serde_json::to_string_pretty(&results).map_err(|e| Failure::Io(e.to_string()))?;
        println!("{text}");
    } else {
        print_table(&results);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} of {} checks failed", results.len())));
    }
    Ok(())
}

fn print_table(results: &[CheckResult]) {
    println!("{:<28} {:<6} {:>11} {:>9}  detail", "check", "result", "observed", "tol");
    for r in results {
        println!(
            "{:<28} {:<6} {:>11.3e} {:>9.0e}  {}",
            r.name,
            if r.passed { "PASS" } else { "FAIL" },
            r.observed,
            r.tolerance,
            r.detail
        );
    }
}

fn load(source: &str, overrides: &[String]) -> Result<(Settings, RunConfig), Failure> {
    let mut settings = Settings::load(source)?;
    settings.apply_overrides(overrides)?;
    let cfg = settings.resolve()?;
    Ok((settings, cfg))
}

pub fn run_once(source: &str, overrides: &[String]) -> Result<(), Failure> {
    let (_, cfg) = load(source, overrides)?;
    cfg.validate()?;
    let model = cfg.model();
    let state = initial_data(&cfg.grid, &cfg.init, &model)?;
    let out = run(&cfg.grid, &model, &cfg.solver, state)?;
    write_run(&cfg.out_dir, &cfg, &out.snapshots)?;
    println!(
        "{} snapshots, {} steps, peak |v| = {:.6}, written to {}",
        out.snapshots.len(),
        out.steps,
        out.peak_speed,
        cfg.out_dir.display()
    );
    Ok(())
}

pub fn lambda_dir(out: &Path, lambda: f64) -> std::path::PathBuf {
    out.join(format!("lambda_{lambda}"))
}

pub fn run_sweep(source: &str, lambdas: Option<&str>, overrides: &[String]) -> Result<(), Failure> {
    let (settings, cfg) = load(source, overrides)?;
    let mut lambdas = match (lambdas, &settings.preset_lambdas) {
        (Some(list), _) => parse_list("lambdas", list)?,
        (None, Some(preset)) => preset.clone(),
        (None, None) => vec![0.0, cfg.params.lambda],
    };
    lambdas.dedup();
    let mut per_lambda = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas.iter().chain(std::iter::once(&0.0)) {
        let c = cfg.with_lambda(lambda)?;
        c.validate().map_err(|e| Failure::Config(format!("lambda = {lambda}: {e}")))?;
        per_lambda.push(c);
    }

    let result = sweep(&cfg.grid, cfg.params.c, &lambdas, &cfg.solver, &cfg.init)?;
    for (run, c) in result.runs.iter().zip(&per_lambda) {
        write_run(&lambda_dir(&cfg.out_dir, run.lambda), c, &run.output.snapshots)?;
    }
    write(&cfg.out_dir.join("metrics.csv"), &metrics_csv(&result.rows))?;
    for run in &result.runs {
        let last = result.distances(run.lambda).last().copied().unwrap_or(0.0);
        println!(
            "lambda = {:<6} steps = {:<6} peak |v| = {:.6}  final L1 distance to lambda = 0: {:.6e}",
            run.lambda, run.output.steps, run.output.peak_speed, last
        );
    }
    println!("written to {}", cfg.out_dir.display());
    Ok(())
}

#[derive(Debug, Serialize)]
struct ModeReport {
    mode: SchemeMode,
    status: &'static str,
    steps: Option<usize>,
    final_linf: Option<f64>,
    final_l1: Option<f64>,
    error: Option<String>,
}

pub fn run_static(source: &str, all_modes: bool, overrides: &[String]) -> Result<(), Failure> {
    let (_, cfg) = load(source, overrides)?;
    let sol = match cfg.init {
        InitialData::Static(sol) => sol,
        other => return Err(Failure::Config(format!("static runs need init = static(K,sign), got {other}"))),
    };
    if cfg.solver.boundary != Boundary::StaticDirichlet(sol) {
        return Err(Failure::Config(format!(
            "static runs use boundary = static_dirichlet({},{}), got {}",
            sol.k,
            if sol.branch.sign() > 0.0 { '+' } else { '-' },
            cfg.solver.boundary
        )));
    }
    cfg.validate()?;
    let modes: Vec<SchemeMode> = if all_modes { SchemeMode::ALL.to_vec() } else { vec![cfg.solver.mode] };

    let model = cfg.model();
    let mut reports = Vec::new();
    for mode in modes {
        let mode_cfg = RunConfig { solver: cfg.solver.clone().with_mode(mode), ..cfg.clone() };
        let dir = if all_modes { cfg.out_dir.join(mode.name()) } else { cfg.out_dir.clone() };
        match static_study(&cfg.grid, &model, sol, &mode_cfg.solver) {
            Ok(study) => {
                write_run(&dir, &mode_cfg, &study.output.snapshots)?;
                write(&dir.join("static.csv"), &profile_csv(&cfg.grid.centers, &study.exact))?;
                write(&dir.join("drift.csv"), &drift_csv(&study.drift))?;
                let last = study.drift.last().copied();
                reports.push(ModeReport {
                    mode,
                    status: "ok",
                    steps: Some(study.output.steps),
                    final_linf: last.map(|d| d.linf),
                    final_l1: last.map(|d| d.l1),
                    error: None,
                });
            }
            Err(e @ Error::Instability { .. }) => reports.push(ModeReport {
                mode,
                status: "unstable",
                steps: None,
                final_linf: None,
                final_l1: None,
                error: Some(e.to_string()),
            }),
            Err(e) => return Err(e.into()),
        }
    }
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| Failure::Io(e.to_string()))?;
    write_json(&cfg.out_dir.join("report.json"), &reports)?;

    println!("{:<16} {:<9} {:>14} {:>14}", "mode", "status", "final L-inf", "final L1");
    for r in &reports {
        match (r.final_linf, r.final_l1) {
            (Some(linf), Some(l1)) => println!("{:<16} {:<9} {linf:>14.6e} {l1:>14.6e}", r.mode.name(), r.status),
            _ => println!("{:<16} {:<9} {}", r.mode.name(), r.status, r.error.as_deref().unwrap_or("")),
        }
    }
    println!("written to {}", cfg.out_dir.display());

    let unstable: Vec<String> = reports
        .iter()
        .filter_map(|r| r.error.as_ref().map(|e| format!("{} mode: {e}", r.mode.name())))
        .collect();
    if !unstable.is_empty() {
        return Err(Failure::Instability(unstable.join("; ")));
    }
    Ok(())
}
