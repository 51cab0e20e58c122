use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::model::{Branch, SourceForm, StaticSolution};

/// Flux differencing and source pairing for the Lax-Friedrichs update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeMode {
    /// Divergence-form flux difference with source `L r (c^2 - v^2)`.
    PaperLiteral,
    /// Divergence-form flux difference with source `L r (c^2 - 2 v^2)`.
    #[default]
    Conservative,
    /// `b_j (f_{j+1} - f_{j-1})` with source `L r (c^2 - v^2)`.
    Nonconservative,
}

impl SchemeMode {
    pub const ALL: [SchemeMode; 3] =
        [SchemeMode::PaperLiteral, SchemeMode::Conservative, SchemeMode::Nonconservative];

    pub fn source_form(self) -> SourceForm {
        match self {
            SchemeMode::PaperLiteral => SourceForm::PaperLiteral,
            SchemeMode::Conservative => SourceForm::Conservative,
            SchemeMode::Nonconservative => SourceForm::Nonconservative,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeMode::PaperLiteral => "paper_literal",
            SchemeMode::Conservative => "conservative",
            SchemeMode::Nonconservative => "nonconservative",
        }
    }
}

impl fmt::Display for SchemeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paper_literal" => Ok(SchemeMode::PaperLiteral),
            "conservative" => Ok(SchemeMode::Conservative),
            "nonconservative" => Ok(SchemeMode::Nonconservative),
            other => Err(argument(format!(
                "unknown scheme mode `{other}` (expected paper_literal, conservative or nonconservative)"
            ))),
        }
    }
}

/// Ghost-cell policy at both ends of the domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Zero-gradient: ghosts copy the adjacent cell.
    Transmissive,
    /// Ghosts take the static solution at the ghost centres.
    StaticDirichlet(StaticSolution),
    /// Constant ghost values.
    Fixed { left: f64, right: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialData {
    /// `left` for `r < split`, `right` otherwise.
    Riemann { left: f64, right: f64, split: f64 },
    Static(StaticSolution),
    Constant(f64),
}

fn branch_symbol(b: Branch) -> char {
    match b {
        Branch::Positive => '+',
        Branch::Negative => '-',
    }
}

fn parse_branch(s: &str) -> Result<Branch> {
    match s.trim() {
        "+" | "plus" | "positive" => Ok(Branch::Positive),
        "-" | "minus" | "negative" => Ok(Branch::Negative),
        other => Err(argument(format!("unknown static branch `{other}` (expected + or -)"))),
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    let s = s.trim();
    let x: f64 = s.parse().map_err(|_| argument(format!("`{s}` is not a number")))?;
    if !x.is_finite() {
        return Err(argument(format!("`{s}` is not finite")));
    }
    Ok(x)
}

/// Splits `name(a,b,c)` into `("name", ["a", "b", "c"])`.
fn split_call(s: &str) -> Result<(&str, Vec<&str>)> {
    let s = s.trim();
    match s.find('(') {
        None => Ok((s, Vec::new())),
        Some(open) => {
            let inner = s[open + 1..]
                .strip_suffix(')')
                .ok_or_else(|| argument(format!("missing `)` in `{s}`")))?;
            let args = if inner.trim().is_empty() { Vec::new() } else { inner.split(',').collect() };
            Ok((s[..open].trim(), args))
        }
    }
}

fn expect_args<'a>(name: &str, args: &'a [&'a str], n: usize) -> Result<&'a [&'a str]> {
    if args.len() != n {
        return Err(argument(format!("`{name}` takes {n} arguments, got {}", args.len())));
    }
    Ok(args)
}

// Static constants are range-checked against c later, when the model is known.
fn raw_static(k: &str, branch: &str) -> Result<StaticSolution> {
    Ok(StaticSolution { k: parse_f64(k)?, branch: parse_branch(branch)? })
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Boundary::Transmissive => f.write_str("transmissive"),
            Boundary::StaticDirichlet(s) => write!(f, "static_dirichlet({},{})", s.k, branch_symbol(s.branch)),
            Boundary::Fixed { left, right } => write!(f, "fixed({left},{right})"),
        }
    }
}

impl FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = split_call(s)?;
        match name {
            "transmissive" => {
                expect_args(name, &args, 0)?;
                Ok(Boundary::Transmissive)
            }
            "static_dirichlet" => {
                let a = expect_args(name, &args, 2)?;
                Ok(Boundary::StaticDirichlet(raw_static(a[0], a[1])?))
            }
            "fixed" => {
                let a = expect_args(name, &args, 2)?;
                Ok(Boundary::Fixed { left: parse_f64(a[0])?, right: parse_f64(a[1])? })
            }
            other => Err(argument(format!("unknown boundary `{other}`"))),
        }
    }
}

impl fmt::Display for InitialData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitialData::Riemann { left, right, split } => write!(f, "riemann({left},{right},{split})"),
            InitialData::Static(s) => write!(f, "static({},{})", s.k, branch_symbol(s.branch)),
            InitialData::Constant(v) => write!(f, "constant({v})"),
        }
    }
}

impl FromStr for InitialData {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = split_call(s)?;
        match name {
            "riemann" => {
                let a = expect_args(name, &args, 3)?;
                Ok(InitialData::Riemann {
                    left: parse_f64(a[0])?,
                    right: parse_f64(a[1])?,
                    split: parse_f64(a[2])?,
                })
            }
            "static" => {
                let a = expect_args(name, &args, 2)?;
                Ok(InitialData::Static(raw_static(a[0], a[1])?))
            }
            "constant" => {
                let a = expect_args(name, &args, 1)?;
                Ok(InitialData::Constant(parse_f64(a[0])?))
            }
            other => Err(argument(format!("unknown initial data `{other}`"))),
        }
    }
}

pub const DEFAULT_CFL: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub mode: SchemeMode,
    pub cfl: f64,
    pub boundary: Boundary,
    pub t_end: f64,
    /// Strictly increasing, all within `[0, t_end]`.
    pub snapshot_times: Vec<f64>,
}

impl SolverConfig {
    /// Conservative mode, CFL 0.5, transmissive ends, one snapshot at `t_end`.
    pub fn new(t_end: f64) -> Self {
        Self {
            mode: SchemeMode::default(),
            cfl: DEFAULT_CFL,
            boundary: Boundary::Transmissive,
            t_end,
            snapshot_times: vec![t_end],
        }
    }

    pub fn with_mode(mut self, mode: SchemeMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_cfl(mut self, cfl: f64) -> Self {
        self.cfl = cfl;
        self
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_snapshots(mut self, times: Vec<f64>) -> Self {
        self.snapshot_times = times;
        self
    }

    /// `n` equally spaced snapshots ending at `t_end`, plus `t = 0` when
    /// `include_initial` is set.
    pub fn with_uniform_snapshots(mut self, n: usize, include_initial: bool) -> Self {
        let mut times: Vec<f64> = if include_initial { vec![0.0] } else { Vec::new() };
        times.extend((1..=n).map(|i| self.t_end * i as f64 / n as f64));
        self.snapshot_times = times;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(argument(format!("CFL number must lie in (0, 1], got {}", self.cfl)));
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return Err(argument(format!("t_end must be a non-negative time, got {}", self.t_end)));
        }
        if self.snapshot_times.is_empty() {
            return Err(argument("at least one snapshot time is required"));
        }
        for &t in &self.snapshot_times {
            if !(t >= 0.0 && t <= self.t_end) {
                return Err(argument(format!("snapshot time {t} lies outside [0, {}]", self.t_end)));
            }
        }
        if self.snapshot_times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(argument("snapshot times must be strictly increasing"));
        }
        if let Boundary::Fixed { left, right } = self.boundary {
            if !(left.is_finite() && right.is_finite()) {
                return Err(argument("fixed boundary values must be finite"));
            }
        }
        Ok(())
    }
}
