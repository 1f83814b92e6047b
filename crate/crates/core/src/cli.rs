//! Command-line front end. Every subcommand produces one table, written as CSV
//! with `#` metadata lines or as a JSON object `{meta, rows}`.
//!
//! Floats are printed with 17 significant digits. The only line that varies
//! between identical runs is the wall-clock line; [`payload_region`] strips it.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::convergence::{
    cos_power, centered_power, dini_integral, distance_power, jackson_ratio, modulus, modulus_central,
    modulus_profile_central, rm_weighted_sum, uniform_error_central, Spectrum, DINI_PER_DECADE, JACKSON_CONSTANT,
};
use crate::divergence::{chain_verify, divergence_table, sawtooth, DEFAULT_DIVERGENCE_ORDER};
use crate::error::Error;
use crate::fourier::{dirichlet_closed, dirichlet_direct, lebesgue_constant, partial_sum_central, CentralFn};
use crate::group::GroupElement;
use crate::quadrature::haar_grid;
use crate::repr::TruncationMode;

/// Environment variable naming the directory for output files when `--out` is absent.
pub const OUTPUT_DIR_ENV: &str = "SU2_FOURIER_OUT_DIR";

/// Marker of the one metadata line excluded from the deterministic payload.
pub const WALL_CLOCK_KEY: &str = "wall_clock_seconds";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
}

/// Comma-separated indices; `a..b` denotes the inclusive range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexList(pub Vec<usize>);

impl FromStr for IndexList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some((lo, hi)) = tok.split_once("..") {
                let lo: usize = lo.parse().map_err(|_| format!("bad range start in `{tok}`"))?;
                let hi: usize = hi.parse().map_err(|_| format!("bad range end in `{tok}`"))?;
                if hi < lo {
                    return Err(format!("empty range `{tok}`"));
                }
                out.extend(lo..=hi);
            } else {
                out.push(tok.parse().map_err(|_| format!("bad index `{tok}`"))?);
            }
        }
        if out.is_empty() {
            return Err("empty index list".into());
        }
        Ok(IndexList(out))
    }
}

/// Comma-separated reals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let out = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|_| format!("bad number `{t}`")))
            .collect::<Result<Vec<_>, _>>()?;
        if out.is_empty() || out.iter().any(|x| !x.is_finite()) {
            return Err("need a nonempty list of finite numbers".into());
        }
        Ok(FloatList(out))
    }
}

/// A central test function, written `kind:parameter`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionSpec {
    Sawtooth(usize),
    Character(usize),
    DistPow(f64),
    CosPow(f64),
    CenteredPow(f64),
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Sawtooth(n) => write!(f, "sawtooth:{n}"),
            FunctionSpec::Character(n) => write!(f, "chi:{n}"),
            FunctionSpec::DistPow(a) => write!(f, "dist-pow:{a}"),
            FunctionSpec::CosPow(a) => write!(f, "cos-pow:{a}"),
            FunctionSpec::CenteredPow(a) => write!(f, "centered-pow:{a}"),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| format!("expected kind:parameter, got `{s}`"))?;
        let index = || arg.parse::<usize>().map_err(|_| format!("bad index in `{s}`"));
        let real = || arg.parse::<f64>().map_err(|_| format!("bad exponent in `{s}`"));
        match kind {
            "sawtooth" => Ok(FunctionSpec::Sawtooth(index()?)),
            "chi" => Ok(FunctionSpec::Character(index()?)),
            "dist-pow" => Ok(FunctionSpec::DistPow(real()?)),
            "cos-pow" => Ok(FunctionSpec::CosPow(real()?)),
            "centered-pow" => Ok(FunctionSpec::CenteredPow(real()?)),
            _ => Err(format!("unknown function kind `{kind}`")),
        }
    }
}

impl Serialize for FunctionSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FunctionSpec {
    pub fn central(&self) -> Result<CentralFn, Error> {
        match *self {
            FunctionSpec::Sawtooth(n) => Ok(sawtooth(n)?.as_central().clone()),
            FunctionSpec::Character(n) => Ok(CentralFn::character(n)),
            FunctionSpec::DistPow(a) => distance_power(a),
            FunctionSpec::CosPow(a) => cos_power(a),
            FunctionSpec::CenteredPow(a) => centered_power(a),
        }
    }

    /// Coefficients through `j_max`: closed form for sawtooth and characters,
    /// quadrature otherwise.
    pub fn spectrum(&self, j_max: usize) -> Result<Spectrum, Error> {
        match *self {
            FunctionSpec::Sawtooth(n) => {
                let saw = sawtooth(n)?;
                Ok(Spectrum::new(
                    self.to_string(),
                    saw.coefficients(j_max),
                    crate::fourier::piecewise_linear_norm_sq(saw.breakpoints()),
                ))
            }
            FunctionSpec::Character(n) => {
                let coeffs = (0..=j_max).map(|m| if m == n { 1.0 } else { 0.0 }).collect();
                Ok(Spectrum::new(self.to_string(), coeffs, 1.0))
            }
            _ => {
                let mut spec = Spectrum::from_central(&self.central()?, j_max);
                spec.label = self.to_string();
                Ok(spec)
            }
        }
    }
}

/// Points for the divergence table: `random:K`, `identity` or `euler:α/β/γ`.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSpec {
    Random(usize),
    Identity,
    Euler(f64, f64, f64),
}

impl FromStr for PointSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "identity" {
            return Ok(PointSpec::Identity);
        }
        if let Some(k) = s.strip_prefix("random:") {
            return k.parse().map(PointSpec::Random).map_err(|_| format!("bad count in `{s}`"));
        }
        if let Some(angles) = s.strip_prefix("euler:") {
            let v: Vec<f64> = angles
                .split('/')
                .map(|t| t.parse::<f64>().map_err(|_| format!("bad angle in `{s}`")))
                .collect::<Result<_, _>>()?;
            if let [a, b, c] = v[..] {
                return Ok(PointSpec::Euler(a, b, c));
            }
            return Err(format!("expected three angles in `{s}`"));
        }
        Err(format!("unknown point spec `{s}`"))
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::Random(k) => write!(f, "random:{k}"),
            PointSpec::Identity => write!(f, "identity"),
            PointSpec::Euler(a, b, c) => write!(f, "euler:{a}/{b}/{c}"),
        }
    }
}

impl Serialize for PointSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Polyhedral,
    Spherical,
}

impl From<ModeArg> for TruncationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Polyhedral => TruncationMode::Polyhedral,
            ModeArg::Spherical => TruncationMode::Spherical,
        }
    }
}

/// The full run configuration, echoed into every output header.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "su2-fourier", version, about = "Fourier partial sums on SU(2)")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Output file; defaults to `$SU2_FOURIER_OUT_DIR/<command>.<ext>`, else stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Direct versus closed-form Dirichlet kernel.
    KernelCheck {
        #[arg(long, default_value_t = 200)]
        n_max: usize,
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        #[arg(long, default_value_t = 1e-3)]
        pole_radius: f64,
    },
    /// Lebesgue constants against (4/π²) log(n+1).
    Lebesgue {
        #[arg(long, default_value = "0,1,10,100,1000")]
        n: IndexList,
    },
    /// Lower-bound chain for the sawtooth witnesses.
    Chain {
        #[arg(long, default_value = "2..64")]
        n: IndexList,
    },
    /// Translated witnesses evaluated through 3D matrix coefficients.
    Diverge {
        #[arg(long, default_values = ["random:5"])]
        points: Vec<PointSpec>,
        #[arg(long, default_value = "4,8,16")]
        n: IndexList,
        #[arg(long, default_value_t = DEFAULT_DIVERGENCE_ORDER)]
        haar_order: usize,
        #[arg(long, default_value_t = 1e-4)]
        tolerance: f64,
    },
    /// Partial sums of a central function at given angles.
    PartialSum {
        #[arg(long, default_value = "sawtooth:8")]
        function: FunctionSpec,
        #[arg(long, default_value = "0..16")]
        n: IndexList,
        #[arg(long, value_enum, default_value_t = ModeArg::Polyhedral)]
        mode: ModeArg,
        #[arg(long, default_value = "0")]
        theta: FloatList,
    },
    /// Sampled and spectral integral modulus of continuity.
    Modulus {
        #[arg(long, default_value = "sawtooth:5")]
        function: FunctionSpec,
        #[arg(long, default_value = "1,0.5,0.25,0.125")]
        t: FloatList,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 24)]
        haar_order: usize,
        #[arg(long, default_value_t = 1024)]
        j_max: usize,
    },
    /// Dini-type integral of the squared modulus.
    Dini {
        #[arg(long, default_value = "dist-pow:0.5")]
        function: FunctionSpec,
        #[arg(long, default_value = "1e-2,1e-3,1e-4")]
        t_min: FloatList,
        #[arg(long, default_value_t = 4096)]
        j_max: usize,
        #[arg(long, default_value_t = DINI_PER_DECADE)]
        per_decade: usize,
    },
    /// Best approximation over modulus at dyadic scales.
    Jackson {
        #[arg(long, default_value = "sawtooth:9")]
        function: FunctionSpec,
        #[arg(long, default_value = "1..6")]
        k: IndexList,
        #[arg(long, default_value_t = 4096)]
        j_max: usize,
        #[arg(long, default_value_t = JACKSON_CONSTANT)]
        bound: f64,
    },
    /// Log-weighted block energies.
    RmSum {
        #[arg(long, default_value = "dist-pow:0.5")]
        function: FunctionSpec,
        #[arg(long, default_value = "16,64,256,1024,4096")]
        j: IndexList,
    },
    /// Uniform error of partial sums on [δ, π-δ].
    UniformCentral {
        #[arg(long, default_value = "centered-pow:0.5")]
        function: FunctionSpec,
        #[arg(long, default_value = "64,128,256")]
        n: IndexList,
        #[arg(long, default_value_t = 0.3)]
        delta: f64,
        #[arg(long, default_value_t = 4001)]
        grid: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::KernelCheck { .. } => "kernel-check",
            Command::Lebesgue { .. } => "lebesgue",
            Command::Chain { .. } => "chain",
            Command::Diverge { .. } => "diverge",
            Command::PartialSum { .. } => "partial-sum",
            Command::Modulus { .. } => "modulus",
            Command::Dini { .. } => "dini",
            Command::Jackson { .. } => "jackson",
            Command::RmSum { .. } => "rm-sum",
            Command::UniformCentral { .. } => "uniform-central",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> String {
        match self {
            Cell::Float(v) if !v.is_finite() => "null".into(),
            Cell::Text(s) => serde_json::to_string(s).expect("strings serialize"),
            other => other.csv(),
        }
    }
}

/// 17 significant digits, e.g. `1.2345678901234567e-3`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// One output table plus any margin failures it revealed.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub failures: Vec<String>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
            failures: Vec::new(),
        }
    }
}

#[derive(Serialize)]
struct Meta<'a> {
    artifact: &'static str,
    version: &'static str,
    command: &'static str,
    seed: u64,
    config: &'a RunConfig,
    wall_clock_seconds: f64,
}

/// Removes the wall-clock line; what remains is identical across identical runs.
pub fn payload_region(text: &str) -> String {
    text.lines()
        .filter(|l| !l.contains(WALL_CLOCK_KEY))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render(config: &RunConfig, table: &Table, seconds: f64) -> String {
    let meta = Meta {
        artifact: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: config.command.name(),
        seed: config.seed,
        config,
        wall_clock_seconds: seconds,
    };
    let mut out = String::new();
    match config.format {
        Format::Csv => {
            let cfg = serde_json::to_string(config).expect("config serializes");
            out.push_str(&format!("# artifact: {} {}\n", meta.artifact, meta.version));
            out.push_str(&format!("# command: {}\n", meta.command));
            out.push_str(&format!("# seed: {}\n", meta.seed));
            out.push_str(&format!("# config: {cfg}\n"));
            out.push_str(&format!("# {WALL_CLOCK_KEY}: {seconds:.3}\n"));
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        Format::Json => {
            let meta_text = serde_json::to_string_pretty(&meta).expect("meta serializes");
            out.push_str("{\n  \"meta\": ");
            out.push_str(&meta_text.replace('\n', "\n  "));
            out.push_str(",\n  \"rows\": [");
            for (i, row) in table.rows.iter().enumerate() {
                let fields: Vec<String> = table
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| format!("\"{c}\": {}", v.json()))
                    .collect();
                out.push_str(if i == 0 { "\n    {" } else { ",\n    {" });
                out.push_str(&fields.join(", "));
                out.push('}');
            }
            out.push_str(if table.rows.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
        }
    }
    out
}

fn f(v: f64) -> Cell {
    Cell::Float(v)
}

fn i(v: usize) -> Cell {
    Cell::Int(v as u64)
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn kernel_check(n_max: usize, grid: usize, radius: f64) -> Result<Table, Error> {
    if grid < 2 || !(0.0..PI / 2.0).contains(&radius) {
        return Err(usage("--grid must be at least 2 and --pole-radius in [0, π/2)"));
    }
    let thetas: Vec<f64> = (0..grid)
        .map(|j| radius + (PI - 2.0 * radius) * j as f64 / (grid - 1) as f64)
        .collect();
    let mut table = Table::new(&["n", "max_abs_diff", "tolerance", "ok"]);
    let rows: Vec<(usize, f64, f64)> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let diff = thetas
                .iter()
                .map(|&t| (dirichlet_direct(n, t) - dirichlet_closed(n, t)).abs())
                .fold(0.0, f64::max);
            (n, diff, 1e-8 * ((n + 1) as f64).powi(3))
        })
        .collect();
    for (n, diff, tol) in rows {
        if diff > tol {
            table.failures.push(format!("n={n}: |direct - closed| = {diff:e} > {tol:e}"));
        }
        table.rows.push(vec![i(n), f(diff), f(tol), Cell::Bool(diff <= tol)]);
    }
    Ok(table)
}

fn lebesgue(ns: &[usize]) -> Table {
    let mut table = Table::new(&["n", "lebesgue", "log_term", "gap"]);
    let vals: Vec<f64> = ns.par_iter().map(|&n| lebesgue_constant(n)).collect();
    for (&n, l) in ns.iter().zip(vals) {
        let log_term = 4.0 / (PI * PI) * ((n + 1) as f64).ln();
        table.rows.push(vec![i(n), f(l), f(log_term), f(l - log_term)]);
    }
    table
}

fn chain(ns: &[usize]) -> Result<Table, Error> {
    let mut table = Table::new(&[
        "n",
        "min_interval_margin",
        "tail_integral",
        "cosine_sum",
        "identity_residual",
        "dirichlet_value",
        "dirichlet_floor",
        "summed_bound",
        "term1",
        "term2",
        "final_lower_bound",
        "doubled_bound_margin",
        "phi",
        "lebesgue",
        "lipalpha_norm_bound",
        "lipalpha_norm_exact",
        "normalized_functional",
        "passed",
    ]);
    let reports = ns.par_iter().map(|&n| chain_verify(n)).collect::<Result<Vec<_>, _>>()?;
    for r in reports {
        table.failures.extend(r.violations());
        table.rows.push(vec![
            i(r.n),
            f(r.min_interval_margin()),
            f(r.tail_integral),
            f(r.cosine_sum),
            f(r.identity_residual),
            f(r.dirichlet_value),
            f(r.dirichlet_floor),
            f(r.summed_bound),
            f(r.term1),
            f(r.term2),
            f(r.final_lower_bound),
            f(r.doubled_bound_margin),
            f(r.phi_value),
            f(r.lebesgue),
            f(r.lipalpha_norm_bound),
            f(r.lipalpha_norm_exact),
            f(r.normalized_functional),
            Cell::Bool(r.passed()),
        ]);
    }
    Ok(table)
}

/// Expands point specs in order; random points come from one ChaCha stream.
pub fn expand_points(specs: &[PointSpec], seed: u64) -> Vec<GroupElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for s in specs {
        match *s {
            PointSpec::Random(k) => out.extend((0..k).map(|_| GroupElement::random(&mut rng))),
            PointSpec::Identity => out.push(GroupElement::IDENTITY),
            PointSpec::Euler(a, b, c) => out.push(GroupElement::from_euler(a, b, c)),
        }
    }
    out
}

fn diverge(points: &[GroupElement], ns: &[usize], order: usize, tolerance: f64) -> Result<Table, Error> {
    if order < 2 {
        return Err(usage("--haar-order must be at least 2"));
    }
    let mut table = Table::new(&[
        "point", "a_re", "a_im", "b_re", "b_im", "n", "translated", "at_identity", "relative_gap", "growth",
    ]);
    let per_point = points
        .par_iter()
        .map(|z| divergence_table(std::slice::from_ref(z), ns, order))
        .collect::<Result<Vec<_>, _>>()?;
    for (p, rows) in per_point.into_iter().enumerate() {
        for r in rows {
            if r.relative_gap.is_nan() || r.relative_gap >= tolerance {
                table
                    .failures
                    .push(format!("point {p}, n={}: relative gap {:e}", r.n, r.relative_gap));
            }
            table.rows.push(vec![
                i(p),
                f(r.point[0]),
                f(r.point[1]),
                f(r.point[2]),
                f(r.point[3]),
                i(r.n),
                f(r.translated),
                f(r.at_identity),
                f(r.relative_gap),
                f(r.growth),
            ]);
        }
    }
    Ok(table)
}

fn partial_sum(func: &FunctionSpec, ns: &[usize], mode: TruncationMode, thetas: &[f64]) -> Result<Table, Error> {
    if thetas.iter().any(|t| !(0.0..=PI).contains(t)) {
        return Err(usage("--theta values must lie in [0, π]"));
    }
    let top = ns.iter().max().copied().unwrap_or(0) + 1;
    let spec = func.spectrum(top)?;
    let central = func.central()?;
    let mut table = Table::new(&["n", "theta", "partial_sum", "value", "abs_error"]);
    for &n in ns {
        for &t in thetas {
            let s = partial_sum_central(&spec.coeffs, n, mode, t);
            let v = central.eval(t);
            table.rows.push(vec![i(n), f(t), f(s), f(v), f((s - v).abs())]);
        }
    }
    Ok(table)
}

fn modulus_table(func: &FunctionSpec, ts: &[f64], samples: usize, order: usize, j_max: usize, seed: u64) -> Result<Table, Error> {
    if order < 2 || samples == 0 {
        return Err(usage("--haar-order must be at least 2 and --samples positive"));
    }
    let spec = func.spectrum(j_max)?;
    let central = func.central()?;
    let rule = haar_grid(order);
    let mut table = Table::new(&["t", "sampled", "spectral", "ratio"]);
    for (row, &t) in ts.iter().enumerate() {
        let sampled = modulus(|x| central.at(x), t, samples, seed.wrapping_add(row as u64), &rule)?;
        let spectral = modulus_central(&spec, t)?;
        table.rows.push(vec![f(t), f(sampled), f(spectral), f(sampled / spectral)]);
    }
    Ok(table)
}

fn dini(func: &FunctionSpec, t_mins: &[f64], j_max: usize, per_decade: usize) -> Result<Table, Error> {
    let smallest = t_mins.iter().copied().fold(f64::INFINITY, f64::min);
    if !(smallest > 0.0 && smallest < 1.0) {
        return Err(usage("--t-min values must lie in (0, 1)"));
    }
    let spec = func.spectrum(j_max)?;
    let profile = modulus_profile_central(&spec, 1.0, smallest, per_decade)?;
    let mut table = Table::new(&["t_min", "dini", "increment"]);
    let mut prev: Option<f64> = None;
    for &t in t_mins {
        let v = dini_integral(&profile, t)?;
        table
            .rows
            .push(vec![f(t), f(v), f(prev.map_or(f64::NAN, |p| v - p))]);
        prev = Some(v);
    }
    Ok(table)
}

fn jackson(func: &FunctionSpec, ks: &[usize], j_max: usize, bound: f64) -> Result<Table, Error> {
    let k_top = ks.iter().max().copied().unwrap_or(0);
    if k_top > 30 || (1usize << k_top) > j_max {
        return Err(usage("--k requires 2^k ≤ --j-max"));
    }
    let spec = func.spectrum(j_max)?;
    let mut table = Table::new(&["k", "best_approx", "modulus", "ratio", "within_bound"]);
    for &k in ks {
        let t = 0.5f64.powi(k as i32);
        let e = crate::convergence::best_approx(&spec, 1 << k)?;
        let omega = modulus_central(&spec, t)?;
        let ratio = match jackson_ratio(&spec, k as u32) {
            Ok(r) => r,
            Err(Error::DegenerateModulus { .. }) => f64::NAN,
            Err(e) => return Err(e),
        };
        let ok = ratio.is_nan() || ratio <= bound;
        if !ok {
            table.failures.push(format!("k={k}: ratio {ratio:e} exceeds {bound:e}"));
        }
        table.rows.push(vec![i(k), f(e), f(omega), f(ratio), Cell::Bool(ok)]);
    }
    Ok(table)
}

fn rm_sum(func: &FunctionSpec, js: &[usize]) -> Result<Table, Error> {
    let spec = func.spectrum(js.iter().max().copied().unwrap_or(0))?;
    let mut table = Table::new(&["j", "rm_sum", "increment"]);
    let mut prev: Option<f64> = None;
    for &j in js {
        let v = rm_weighted_sum(&spec, j)?;
        table.rows.push(vec![i(j), f(v), f(prev.map_or(f64::NAN, |p| v - p))]);
        prev = Some(v);
    }
    Ok(table)
}

fn uniform(func: &FunctionSpec, ns: &[usize], delta: f64, grid: usize) -> Result<Table, Error> {
    let spec = func.spectrum(ns.iter().max().copied().unwrap_or(0))?;
    let central = func.central()?;
    let mut table = Table::new(&["n", "delta", "max_error"]);
    for &n in ns {
        let e = uniform_error_central(&central, &spec, n, delta, grid)?;
        table.rows.push(vec![i(n), f(delta), f(e)]);
    }
    Ok(table)
}

/// Computes the table for a parsed configuration.
pub fn execute(config: &RunConfig) -> Result<Table, Error> {
    match &config.command {
        Command::KernelCheck { n_max, grid, pole_radius } => kernel_check(*n_max, *grid, *pole_radius),
        Command::Lebesgue { n } => Ok(lebesgue(&n.0)),
        Command::Chain { n } => chain(&n.0),
        Command::Diverge { points, n, haar_order, tolerance } => {
            diverge(&expand_points(points, config.seed), &n.0, *haar_order, *tolerance)
        }
        Command::PartialSum { function, n, mode, theta } => partial_sum(function, &n.0, (*mode).into(), &theta.0),
        Command::Modulus { function, t, samples, haar_order, j_max } => {
            modulus_table(function, &t.0, *samples, *haar_order, *j_max, config.seed)
        }
        Command::Dini { function, t_min, j_max, per_decade } => dini(function, &t_min.0, *j_max, *per_decade),
        Command::Jackson { function, k, j_max, bound } => jackson(function, &k.0, *j_max, *bound),
        Command::RmSum { function, j } => rm_sum(function, &j.0),
        Command::UniformCentral { function, n, delta, grid } => uniform(function, &n.0, *delta, *grid),
    }
}

fn destination(config: &RunConfig) -> Option<PathBuf> {
    config.out.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV).map(|dir| {
            PathBuf::from(dir).join(format!("{}.{}", config.command.name(), config.format.extension()))
        })
    })
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match destination(config) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, text)?;
        }
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns the
/// exit code: 0 on success, 1 on a margin failure, 2 on a usage error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    let table = match execute(&config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = render(&config, &table, start.elapsed().as_secs_f64());
    if let Err(e) = emit(&config, &text) {
        eprintln!("error: {e}");
        return 2;
    }
    if table.failures.is_empty() {
        0
    } else {
        for msg in &table.failures {
            eprintln!("margin failure: {msg}");
        }
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("su2-fourier").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn index_lists() {
        assert_eq!("2..4,10".parse::<IndexList>().unwrap().0, vec![2, 3, 4, 10]);
        assert!("5..3".parse::<IndexList>().is_err());
        assert!("".parse::<IndexList>().is_err());
        assert!("x".parse::<IndexList>().is_err());
    }

    #[test]
    fn function_specs_round_trip() {
        for s in ["sawtooth:7", "chi:3", "dist-pow:0.5", "cos-pow:0.3", "centered-pow:0.8"] {
            assert_eq!(s.parse::<FunctionSpec>().unwrap().to_string(), s);
        }
        assert!("square:2".parse::<FunctionSpec>().is_err());
    }

    #[test]
    fn point_specs() {
        assert_eq!("random:3".parse::<PointSpec>(), Ok(PointSpec::Random(3)));
        assert_eq!("euler:1/2/3".parse::<PointSpec>(), Ok(PointSpec::Euler(1.0, 2.0, 3.0)));
        assert!("euler:1/2".parse::<PointSpec>().is_err());
        assert_eq!(expand_points(&[PointSpec::Random(2), PointSpec::Identity], 4).len(), 3);
    }

    #[test]
    fn float_format_has_seventeen_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(-2.5), "-2.5000000000000000e0");
        assert_eq!("1.0000000000000001e-1".parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn lebesgue_csv_shape() {
        let cfg = parse(&["lebesgue", "--n", "1,10,100,1000", "--format", "csv"]);
        let table = execute(&cfg).unwrap();
        let text = render(&cfg, &table, 0.0);
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body[0], "n,lebesgue,log_term,gap");
        assert_eq!(body.len(), 5);
    }

    #[test]
    fn json_is_valid() {
        let cfg = parse(&["chain", "--n", "2..4", "--format", "json"]);
        let table = execute(&cfg).unwrap();
        let text = render(&cfg, &table, 1.25);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 3);
        assert_eq!(v["meta"]["command"], "chain");
        assert_eq!(v["meta"]["config"]["command"]["name"], "chain");
        assert_eq!(v["rows"][0]["passed"], true);
    }

    #[test]
    fn payload_ignores_wall_clock() {
        let cfg = parse(&["rm-sum", "--function", "sawtooth:5", "--j", "8,16"]);
        let table = execute(&cfg).unwrap();
        let a = render(&cfg, &table, 0.5);
        let b = render(&cfg, &table, 7.0);
        assert_ne!(a, b);
        assert_eq!(payload_region(&a), payload_region(&b));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["su2-fourier", "nonsense"]), 2);
        assert_eq!(run(["su2-fourier", "chain", "--n", "1"]), 2);
        assert_eq!(run(["su2-fourier", "lebesgue", "--n", "a"]), 2);
    }
}
