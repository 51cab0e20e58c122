//! Flat `key = value` run configuration.
//!
//! Sources are merged in order (preset or file, then `--key=value`
//! overrides) into a string map, and only then resolved into typed values,
//! so every key is checked before any computation starts.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use desitter::experiments::{preset, Preset};
use desitter::fvsolver::{make_grid, validate_setup};
use desitter::{Boundary, BurgersModel, Grid, InitialData, SchemeMode, SolverConfig, SpacetimeParams};

use crate::Failure;

pub const KEYS: [&str; 12] = [
    "lambda",
    "c",
    "n_cells",
    "r_min",
    "r_max",
    "cfl",
    "mode",
    "boundary",
    "init",
    "t_end",
    "snapshot_times",
    "out_dir",
];

/// Keys a `meta.json` carries that are not configuration.
const META_ONLY: [&str; 1] = ["tool_version"];

/// Merged, still untyped settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    values: BTreeMap<String, String>,
    /// Base name for the default output directory.
    pub name: String,
    /// Lambdas a preset compares, if the source was a preset.
    pub preset_lambdas: Option<Vec<f64>>,
}

fn config_error(msg: impl Into<String>) -> Failure {
    Failure::Config(msg.into())
}

impl Settings {
    /// A preset name (`fig1`..`fig7`), a `key = value` file or a `meta.json`.
    pub fn load(source: &str) -> Result<Self, Failure> {
        let path = Path::new(source);
        if path.is_file() {
            let text = fs::read_to_string(path)
                .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
            let name = path.file_stem().map_or("run".into(), |s| s.to_string_lossy().into_owned());
            let mut settings = if path.extension().is_some_and(|e| e == "json") {
                Self::from_meta_json(&text)?
            } else {
                Self::parse(&text)?
            };
            settings.name = name;
            return Ok(settings);
        }
        match preset(source) {
            Some(p) => Ok(Self::from_preset(&p)),
            None => Err(config_error(format!("`{source}` is neither a config file nor a preset name"))),
        }
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let mut settings = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config_error(format!("line {}: expected `key = value`, got `{line}`", i + 1)))?;
            let key = key.trim();
            if settings.values.contains_key(key) {
                return Err(config_error(format!("line {}: duplicate key `{key}`", i + 1)));
            }
            settings.insert(key, value.trim())?;
        }
        Ok(settings)
    }

    /// Reads back the `meta.json` written next to a run.
    pub fn from_meta_json(text: &str) -> Result<Self, Failure> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| config_error(format!("invalid JSON: {e}")))?;
        let object = value.as_object().ok_or_else(|| config_error("meta.json must hold a JSON object"))?;
        let mut settings = Self::default();
        for (key, v) in object {
            if META_ONLY.contains(&key.as_str()) {
                continue;
            }
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                serde_json::Value::Array(items) => {
                    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                }
                other => return Err(config_error(format!("`{key}`: unsupported value {other}"))),
            };
            settings.insert(key, &text)?;
        }
        Ok(settings)
    }

    pub fn from_preset(p: &Preset) -> Self {
        let times = p.solver_config().snapshot_times;
        let mut values = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            values.insert(k.to_string(), v);
        };
        put("lambda", p.lambda.to_string());
        put("n_cells", p.n_cells.to_string());
        put("r_min", p.r_min.to_string());
        put("r_max", p.r_max.to_string());
        put("boundary", p.boundary.to_string());
        put("init", p.init.to_string());
        put("t_end", p.t_end.to_string());
        put("snapshot_times", join(&times));
        Self { values, name: p.name.to_string(), preset_lambdas: Some(p.lambdas()) }
    }

    fn insert(&mut self, key: &str, value: &str) -> Result<(), Failure> {
        if !KEYS.contains(&key) {
            return Err(config_error(format!("unknown key `{key}` (known keys: {})", KEYS.join(", "))));
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    /// Applies `--key=value` overrides; they win over the loaded source.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<(), Failure> {
        for raw in overrides {
            let body = raw
                .strip_prefix("--")
                .ok_or_else(|| config_error(format!("override `{raw}` must look like --key=value")))?;
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| config_error(format!("override `{raw}` must look like --key=value")))?;
            self.insert(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn resolve(&self) -> Result<RunConfig, Failure> {
        let num = |key: &str, default: f64| -> Result<f64, Failure> {
            match self.get(key) {
                None => Ok(default),
                Some(s) => parse_number(key, s),
            }
        };
        let lambda = num("lambda", 0.0)?;
        let c = num("c", 1.0)?;
        let n_cells = match self.get("n_cells") {
            None => 400,
            Some(s) => s.parse::<usize>().map_err(|_| config_error(format!("n_cells: `{s}` is not a count")))?,
        };
        let r_min = num("r_min", 0.0)?;
        let r_max = num("r_max", 1.0)?;
        let cfl = num("cfl", desitter::fvsolver::DEFAULT_CFL)?;
        let t_end = num("t_end", 0.5)?;
        let mode = match self.get("mode") {
            None => SchemeMode::default(),
            Some(s) => s.parse().map_err(|e| config_error(format!("mode: {e}")))?,
        };
        let init: InitialData = self
            .get("init")
            .ok_or_else(|| config_error("missing required key `init`"))?
            .parse()
            .map_err(|e| config_error(format!("init: {e}")))?;
        let boundary = match self.get("boundary") {
            None | Some("auto") => default_boundary(&init),
            Some(s) => s.parse().map_err(|e| config_error(format!("boundary: {e}")))?,
        };
        let snapshot_times = match self.get("snapshot_times") {
            None => vec![t_end],
            Some(s) => parse_list("snapshot_times", s)?,
        };
        let out_dir = match self.get("out_dir") {
            Some(s) => PathBuf::from(s),
            None => Path::new("out").join(if self.name.is_empty() { "run" } else { &self.name }),
        };

        let params = SpacetimeParams::new(lambda, c).map_err(|e| config_error(e.to_string()))?;
        let grid = make_grid(n_cells, r_min, r_max).map_err(|e| config_error(e.to_string()))?;
        let solver = SolverConfig::new(t_end)
            .with_mode(mode)
            .with_cfl(cfl)
            .with_boundary(boundary)
            .with_snapshots(snapshot_times);
        Ok(RunConfig { params, grid, solver, init, out_dir })
    }
}

/// Transmissive for evolving data, static Dirichlet for static data.
pub fn default_boundary(init: &InitialData) -> Boundary {
    match init {
        InitialData::Static(sol) => Boundary::StaticDirichlet(*sol),
        _ => Boundary::Transmissive,
    }
}

fn parse_number(key: &str, s: &str) -> Result<f64, Failure> {
    let x: f64 = s.trim().parse().map_err(|_| config_error(format!("{key}: `{s}` is not a number")))?;
    if !x.is_finite() {
        return Err(config_error(format!("{key}: `{s}` is not finite")));
    }
    Ok(x)
}

/// `0,0.25,0.5` or `[0, 0.25, 0.5]`.
pub fn parse_list(key: &str, s: &str) -> Result<Vec<f64>, Failure> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Err(config_error(format!("{key}: empty list")));
    }
    inner.split(',').map(|item| parse_number(key, item)).collect()
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

/// Fully typed configuration for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: SpacetimeParams,
    pub grid: Grid,
    pub solver: SolverConfig,
    pub init: InitialData,
    pub out_dir: PathBuf,
}

impl RunConfig {
    pub fn model(&self) -> BurgersModel {
        BurgersModel::new(self.params)
    }

    /// Same run at another lambda.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self, Failure> {
        let params = SpacetimeParams::new(lambda, self.params.c).map_err(|e| config_error(e.to_string()))?;
        Ok(Self { params, ..self.clone() })
    }

    /// Every check that can fail before stepping: solver settings, domain
    /// against the horizon, ghost values and the initial data itself.
    pub fn validate(&self) -> Result<(), Failure> {
        let model = self.model();
        validate_setup(&self.grid, &model, &self.solver).map_err(|e| config_error(e.to_string()))?;
        desitter::fvsolver::initial_data(&self.grid, &self.init, &model)
            .map_err(|e| config_error(e.to_string()))?;
        Ok(())
    }
}
