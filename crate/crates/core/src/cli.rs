//! Command-line front end: flag and config-file parsing, dispatch, and
//! CSV/JSON rendering.

use crate::asymptotics::{
    convergence_table, estimate_critical_points, estimate_sphere_maxima, EstimateRequest,
};
use crate::bignum::{factorial, rational_from_biguint};
use crate::colorings::{
    closed_form_e, coloring_count, empirical_e_from_exact, exact_p_table, ColoringMode,
    ColoringRequest, ColoringValue, TupleCaps,
};
use crate::error::Error;
use crate::exact_enum::{brute_force_a, exact_a_partition_sum, BruteForceOptions, CountTable};
use crate::logval::LogMagnitudeValue;
use crate::multipoly::{MultiIndex, Precision, RationalPolynomial};
use crate::sphere_critical::{
    build_psi, default_restarts, find_maxima, CriticalPointRecord, DEFAULT_SEED,
};
use crate::validation::{run_suite, to_csv, ValidationOptions, CSV_HEADER};
use crate::weights::WeightSpec;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;
pub const EXIT_DEGENERATE: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "colgraph",
    version,
    about = "Exact and asymptotic counts of edge-colored regular multigraphs weighted by 1/|Aut|"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact A(n) = Σ_{|s|=m} ∏(2s_i-1)!! [x^{2s}] V^n / n!, m = nk/2 (or the
    /// multiplicity partition sum, or half-edge brute force via --method).
    Exact(JobArgs),
    /// Leading-order estimate Γ(ℓ)/(2π) Σ_{z∈Ψ} (-g(z))^{-ℓ} / sqrt((-1)^{c-1} det Hess g(z)),
    /// ℓ = n(k/2-1); --method proposition uses the sphere-maximizer form
    /// with the spherical Hessian of log V.
    Asym(JobArgs),
    /// Maxima of |V| on the unit sphere lifted to critical points z = τx of
    /// g = -|x|²/2 + V, with τ^{2-k} = kV(x).
    Crit(JobArgs),
    /// Proper c-edge-coloring count P_k^c(n) with V = e_k: exact, closed-form
    /// asymptotics, numerical critical points, or matrix-tuple brute force.
    Colorings(JobArgs),
    /// Expected number of proper c-edge-colorings of a random k-regular
    /// vertex-labeled multigraph: closed form against n! P / (Bender–Canfield count).
    Expected(JobArgs),
    /// Table of exact A(n) against the leading-order estimate.
    Converge(JobArgs),
    /// Run the built-in validation suite; exit status 4 on any failure.
    Validate(JobArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Elementary symmetric polynomial e_k (proper colorings).
    Ek,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Exact,
    ClosedForm,
    ViaCriticalPoints,
    BruteForce,
}

impl From<ModeArg> for ColoringMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => ColoringMode::Exact,
            ModeArg::ClosedForm => ColoringMode::ClosedForm,
            ModeArg::ViaCriticalPoints => ColoringMode::ViaCriticalPoints,
            ModeArg::BruteForce => ColoringMode::BruteForce,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    /// exact: coefficient extraction from V^n.
    Series,
    /// exact: sum over vertex-type multiplicities.
    Partition,
    /// exact: half-edge set-partition enumeration (small nk only).
    Brute,
    /// asym: sum over critical points of g.
    Theorem,
    /// asym: sum over sphere maximizers of |V|.
    Proposition,
}

/// Flags shared by every command. Values from `--config` override these.
#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobArgs {
    /// Number of colors.
    #[arg(long)]
    pub c: Option<usize>,
    /// Vertex degree.
    #[arg(long)]
    pub k: Option<u32>,
    /// Weights as JSON: [{"w":[..],"num":p,"den":q}, ...].
    #[arg(long)]
    #[serde(skip)]
    pub weights: Option<String>,
    /// Builtin weight family instead of --weights.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Single vertex count.
    #[arg(long)]
    pub n: Option<u32>,
    /// Vertex counts a:b:step (inclusive).
    #[arg(long = "n-range")]
    pub n_range: Option<String>,
    /// Seed for the multistart maxima search.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of multistart runs (default max(200, 100c)).
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Mantissa bits for evaluating g at critical points (53 or 106).
    #[arg(long = "precision-bits")]
    pub precision_bits: Option<u32>,
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON config file; its values override flags.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Coloring mode (colorings command).
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Exact or asymptotic method variant.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub w: Vec<u32>,
    pub num: i64,
    pub den: i64,
}

/// A config file: the shared flags plus weights given as a JSON array.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    #[serde(flatten)]
    args: JobArgs,
    weights: Option<Vec<WeightEntry>>,
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Parses `[{"w":[..],"num":p,"den":q}, ...]` into exact weights.
pub fn parse_weights(text: &str, c: usize, k: u32) -> Result<WeightSpec, Error> {
    let entries: Vec<WeightEntry> =
        serde_json::from_str(text).map_err(|e| config_err(format!("weights: {e}")))?;
    weights_from_entries(&entries, c, k)
}

pub fn weights_from_entries(
    entries: &[WeightEntry],
    c: usize,
    k: u32,
) -> Result<WeightSpec, Error> {
    let mut pairs = Vec::with_capacity(entries.len());
    for e in entries {
        if e.den == 0 {
            return Err(Error::InvalidWeight {
                key: e.w.clone(),
                reason: "zero denominator".into(),
            });
        }
        pairs.push((
            MultiIndex::new(e.w.clone()),
            BigRational::new(BigInt::from(e.num), BigInt::from(e.den)),
        ));
    }
    WeightSpec::from_entries(c, k, pairs)
}

/// Weights of `spec` in reduced num/den form, in graded-lex order.
/// Integers beyond `i64` are emitted as strings.
pub fn weight_entries(spec: &WeightSpec) -> Vec<Value> {
    let int = |b: &BigInt| {
        b.to_i64()
            .map_or_else(|| Value::String(b.to_string()), Value::from)
    };
    spec.support()
        .map(|(w, v)| json!({"w": w.exps(), "num": int(v.numer()), "den": int(v.denom())}))
        .collect()
}

/// Parses `a:b:step` (inclusive; step defaults to 1).
pub fn parse_n_range(text: &str) -> Result<Vec<u32>, Error> {
    let parts: Vec<&str> = text.split(':').collect();
    let num = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| config_err(format!("bad n-range component {s:?}")))
    };
    let (a, b, step) = match parts.as_slice() {
        [a, b] => (num(a)?, num(b)?, 1),
        [a, b, s] => (num(a)?, num(b)?, num(s)?),
        _ => {
            return Err(config_err(format!(
                "n-range must be a:b[:step], got {text:?}"
            )))
        }
    };
    if step == 0 || a > b {
        return Err(config_err(format!("empty n-range {text:?}")));
    }
    Ok((a..=b).step_by(step as usize).collect())
}

#[derive(Debug, Clone)]
struct Job {
    args: JobArgs,
    weights_json: Option<Vec<WeightEntry>>,
}

impl Job {
    fn resolve(mut args: JobArgs) -> Result<Self, Error> {
        let mut weights_json = match &args.weights {
            Some(text) => Some(
                serde_json::from_str::<Vec<WeightEntry>>(text)
                    .map_err(|e| config_err(format!("weights: {e}")))?,
            ),
            None => None,
        };
        if let Some(path) = args.config.clone() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| config_err(format!("cannot read {}: {e}", path.display())))?;
            let file: ConfigFile = serde_json::from_str(&text)
                .map_err(|e| config_err(format!("{}: {e}", path.display())))?;
            let o = file.args;
            macro_rules! take {
                ($($f:ident),*) => { $( if o.$f.is_some() { args.$f = o.$f.clone(); } )* };
            }
            take!(
                c,
                k,
                family,
                n,
                n_range,
                seed,
                restarts,
                precision_bits,
                format,
                output,
                mode,
                method
            );
            if file.weights.is_some() {
                weights_json = file.weights;
            }
        }
        Ok(Job { args, weights_json })
    }

    fn c(&self) -> Result<usize, Error> {
        self.args.c.ok_or_else(|| config_err("--c is required"))
    }

    fn k(&self) -> Result<u32, Error> {
        self.args.k.ok_or_else(|| config_err("--k is required"))
    }

    fn seed(&self) -> u64 {
        self.args.seed.unwrap_or(DEFAULT_SEED)
    }

    fn restarts(&self, c: usize) -> usize {
        self.args.restarts.unwrap_or_else(|| default_restarts(c))
    }

    fn format(&self) -> OutputFormat {
        self.args.format.unwrap_or(OutputFormat::Csv)
    }

    fn precision(&self) -> Result<Precision, Error> {
        Precision::from_bits(self.args.precision_bits.unwrap_or(53))
            .map_err(|e| config_err(e.to_string()))
    }

    fn ns(&self) -> Result<Vec<u32>, Error> {
        match (self.args.n, &self.args.n_range) {
            (Some(_), Some(_)) => Err(config_err("give either --n or --n-range, not both")),
            (Some(n), None) => Ok(vec![n]),
            (None, Some(r)) => parse_n_range(r),
            (None, None) => Err(config_err("--n or --n-range is required")),
        }
    }

    fn spec(&self) -> Result<WeightSpec, Error> {
        let (c, k) = (self.c()?, self.k()?);
        match (&self.args.family, &self.weights_json) {
            (Some(_), Some(_)) => Err(config_err("--weights is not allowed with --family")),
            (Some(Family::Ek), None) => WeightSpec::elementary_symmetric(c, k),
            (None, Some(entries)) => weights_from_entries(entries, c, k),
            (None, None) => Err(config_err("--weights or --family is required")),
        }
    }

    fn echo(&self, spec: Option<&WeightSpec>) -> Value {
        let a = &self.args;
        let mut obj = json!({
            "c": a.c, "k": a.k, "n": a.n, "n_range": a.n_range, "seed": self.seed(),
            "restarts": a.restarts, "precision_bits": a.precision_bits,
            "format": self.format(), "family": a.family, "mode": a.mode, "method": a.method,
        });
        if let Some(s) = spec.filter(|_| a.family.is_none()) {
            obj["weights"] = Value::Array(weight_entries(s));
        }
        obj
    }
}

/// Columns and rows of an output table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self, formula: &str, config: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(r.iter().map(|v| Value::String(v.clone())))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({
            "metadata": {
                "tool": "colgraph",
                "version": env!("CARGO_PKG_VERSION"),
                "formula": formula,
                "config": config,
            },
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.12e}")
    }
}

fn fmt_log10(v: &LogMagnitudeValue) -> String {
    fmt_f64(v.log10_abs())
}

fn fmt_decimal(v: &LogMagnitudeValue) -> String {
    if v.is_zero() {
        "0".into()
    } else {
        v.to_string()
    }
}

fn rational_cells(r: &BigRational) -> Vec<String> {
    let v = LogMagnitudeValue::from_rational(r);
    let sign = if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    };
    vec![
        r.to_string(),
        sign.to_string(),
        fmt_log10(&v),
        fmt_decimal(&v),
    ]
}

fn exact_table(job: &Job) -> Result<(Table, &'static str, Value), Error> {
    let spec = job.spec()?;
    let ns = job.ns()?;
    let method = job.args.method.unwrap_or(MethodArg::Series);
    let (table, formula) = match method {
        MethodArg::Series => (
            CountTable::series(&spec, &ns),
            "A(n) = sum_{|s|=m} prod_i (2s_i-1)!! [x^{2s}] V^n / n!",
        ),
        MethodArg::Partition => {
            let mut t = CountTable::default();
            for &n in &ns {
                t.insert(
                    n,
                    exact_a_partition_sum(n, &spec),
                    crate::exact_enum::Provenance::PartitionSum,
                );
            }
            (t, "A(n) = sum over vertex-type multiplicities t_w of prod_i (2s_i-1)!! prod_w Lambda_w^t_w / (t_w! (w!)^t_w)")
        }
        MethodArg::Brute => {
            let mut t = CountTable::default();
            for &n in &ns {
                t.insert(
                    n,
                    brute_force_a(n, &spec, BruteForceOptions::default())?,
                    crate::exact_enum::Provenance::BruteForce,
                );
            }
            (t, "A(n) = half-edge labeled graphs weighted by Lambda / (n! prod (w!)) enumerated by set partitions")
        }
        _ => {
            return Err(config_err(
                "exact supports --method series, partition or brute",
            ))
        }
    };
    let mut out = Table::new(&["n", "A", "sign", "log10_abs", "decimal"]);
    for (n, value, _) in table.iter() {
        let mut row = vec![n.to_string()];
        row.extend(rational_cells(value));
        out.rows.push(row);
    }
    Ok((out, formula, job.echo(Some(&spec))))
}

fn refine_records(
    v: &RationalPolynomial,
    psi: &mut [CriticalPointRecord],
    precision: Precision,
) -> Result<(), Error> {
    if precision == Precision::Double {
        return Ok(());
    }
    let g = crate::sphere_critical::potential_g(v);
    for rec in psi {
        rec.g_of_z = g.eval_with(&rec.z, precision)?;
    }
    Ok(())
}

fn critical_points(
    job: &Job,
    spec: &WeightSpec,
) -> Result<
    (
        Vec<crate::sphere_critical::SphericalMaximizer>,
        Vec<CriticalPointRecord>,
    ),
    Error,
> {
    let v = spec.potential();
    let maxima = find_maxima(&v, job.restarts(spec.colors()), job.seed())?;
    let mut psi = build_psi(&v, &maxima)?;
    refine_records(&v, &mut psi, job.precision()?)?;
    Ok((maxima, psi))
}

fn crit_table(job: &Job) -> Result<(Table, &'static str, Value), Error> {
    let spec = job.spec()?;
    let (_, psi) = critical_points(job, &spec)?;
    let mut cols: Vec<String> = (1..=spec.colors()).map(|i| format!("x{i}")).collect();
    for c in [
        "tau_re",
        "tau_im",
        "g_re",
        "g_im",
        "hessdet_re",
        "hessdet_im",
        "nondegenerate",
    ] {
        cols.push(c.into());
    }
    let mut out = Table {
        columns: cols,
        rows: Vec::new(),
    };
    for r in &psi {
        let mut row: Vec<String> = r.x.iter().map(|&x| fmt_f64(x)).collect();
        for v in [
            r.tau.re,
            r.tau.im,
            r.g_of_z.re,
            r.g_of_z.im,
            r.hess_det_g.re,
            r.hess_det_g.im,
        ] {
            row.push(fmt_f64(v));
        }
        row.push(r.nondegenerate.to_string());
        out.rows.push(row);
    }
    Ok((
        out,
        "maxima of |V| on S^{c-1}; z = tau x with tau^{2-k} = k V(x); g = -|x|^2/2 + V",
        job.echo(Some(&spec)),
    ))
}

fn asym_table(job: &Job) -> Result<(Table, &'static str, Value), Error> {
    let spec = job.spec()?;
    let ns = job.ns()?;
    let (k, c) = (spec.degree(), spec.colors());
    let method = job.args.method.unwrap_or(MethodArg::Theorem);
    let (maxima, psi) = critical_points(job, &spec)?;
    let v = spec.potential();
    let formula = match method {
        MethodArg::Theorem => "Gamma(l)/(2 pi) sum_{z in Psi} (-g(z))^{-l} / sqrt((-1)^{c-1} det Hess g(z)), l = n(k/2-1)",
        MethodArg::Proposition => "k^{m+(c-1)/2} (k/2-1)^{n-m} sqrt(k/2-1) / (sqrt(8) pi) Gamma(m-n) sum_{x in Phi} V(x)^n / sqrt((-1)^{c-1} det Hess_S f(x))",
        _ => return Err(config_err("asym supports --method theorem or proposition")),
    };
    let mut out = Table::new(&[
        "n",
        "l",
        "estimate_sign",
        "estimate_log10",
        "decimal",
        "diagnostic",
    ]);
    for n in ns {
        let req = EstimateRequest::new(n, k, c);
        let est = match method {
            MethodArg::Theorem => estimate_critical_points(&req, &psi)?,
            _ => estimate_sphere_maxima(&req, &v, &maxima)?,
        };
        out.rows.push(vec![
            n.to_string(),
            req.ell().map_or_else(|| "nan".into(), |l| l.to_string()),
            est.value.sign().to_string(),
            fmt_log10(&est.value),
            fmt_decimal(&est.value),
            est.diagnostic.map_or("", |d| d.as_str()).to_string(),
        ]);
    }
    Ok((out, formula, job.echo(Some(&spec))))
}

fn converge_table(job: &Job) -> Result<(Table, &'static str, Value), Error> {
    let spec = job.spec()?;
    let ns = job.ns()?;
    let rows = convergence_table(&spec, &ns, job.restarts(spec.colors()), job.seed())?;
    let mut out = Table::new(&[
        "n",
        "l",
        "A_exact_log10",
        "A_est_log10",
        "ratio",
        "abs_ratio_minus_1",
    ]);
    for r in rows {
        out.rows.push(vec![
            r.n.to_string(),
            r.ell.map_or_else(|| "nan".into(), |l| l.to_string()),
            fmt_log10(&r.exact),
            fmt_log10(&r.estimate),
            fmt_f64(r.ratio),
            fmt_f64(r.abs_ratio_minus_1),
        ]);
    }
    Ok((out, "exact A(n) / [Gamma(l)/(2 pi) sum_{z in Psi} (-g(z))^{-l} / sqrt((-1)^{c-1} det Hess g(z))]", job.echo(Some(&spec))))
}

fn coloring_args(job: &Job) -> Result<(u32, usize), Error> {
    if job.weights_json.is_some() {
        return Err(config_err(
            "colorings use V = e_k; --weights is not allowed",
        ));
    }
    Ok((job.k()?, job.c()?))
}

fn colorings_table(job: &Job) -> Result<(Table, &'static str, Value), Error> {
    let (k, c) = coloring_args(job)?;
    let ns = job.ns()?;
    let mode: ColoringMode = job.args.mode.unwrap_or(ModeArg::Exact).into();
    let mut out = Table::new(&["n", "mode", "P", "sign", "log10_abs", "decimal"]);
    let exact = if mode == ColoringMode::Exact {
        Some(exact_p_table(k, c, &ns)?)
    } else {
        None
    };
    for n in ns {
        let value = match &exact {
            Some(t) => ColoringValue::Exact(t.get(n).expect("computed").clone()),
            None => coloring_count(
                &ColoringRequest::new(n, k, c, mode),
                job.restarts(c),
                job.seed(),
                TupleCaps::default(),
            )?,
        };
        let mut row = vec![n.to_string(), mode.as_str().to_string()];
        match value {
            ColoringValue::Exact(r) => row.extend(rational_cells(&r)),
            ColoringValue::Approx(v) => {
                row.extend([
                    String::new(),
                    v.sign().to_string(),
                    fmt_log10(&v),
                    fmt_decimal(&v),
                ]);
            }
        }
        out.rows.push(row);
    }
    let formula = match mode {
        ColoringMode::Exact => "P_k^c(n) = A(n) with Lambda_w = 1 on 0/1 compositions (V = e_k)",
        ColoringMode::ClosedForm => "c = k, n even: Gamma(l) 2^{k/2}/(2 pi) (2/(k-2))^{l-1/2}; c > k: Gamma(l) sqrt(k-2)/(2 pi) ((k-1)/(c-1)+1)^{(1-c)/2} (k C(c,k))^n c^{-nk/2} (2k/(k-2))^l",
        ColoringMode::ViaCriticalPoints => "Gamma(l)/(2 pi) sum_{z in Psi} (-g(z))^{-l} / sqrt((-1)^{c-1} det Hess g(z)) with V = e_k",
        ColoringMode::BruteForce => "n! P = number of tuples of symmetric zero-diagonal 0/1 matrices with color row sums <= 1 and total row sums k",
    };
    Ok((out, formula, job.echo(None)))
}

fn expected_table(job: &Job) -> Result<(Table, &'static str, Value), Error> {
    let (k, c) = coloring_args(job)?;
    let ns = job.ns()?;
    let exact = exact_p_table(k, c, &ns)?;
    let mut out = Table::new(&[
        "n",
        "E_closed_log10",
        "E_empirical_log10",
        "labeled_colorings",
        "ratio",
    ]);
    for n in ns {
        let p = exact.get(n).expect("computed");
        let closed = closed_form_e(&ColoringRequest::new(n, k, c, ColoringMode::ClosedForm))?;
        let emp = empirical_e_from_exact(n, k, p)?;
        let labeled = p * rational_from_biguint(factorial(u64::from(n)));
        out.rows.push(vec![
            n.to_string(),
            fmt_log10(&closed),
            fmt_log10(&emp),
            labeled.to_string(),
            fmt_f64(emp.ratio(&closed)),
        ]);
    }
    Ok((
        out,
        "E = ((k-1)/(c-1)+1)^{(1-c)/2} (k! C(c,k))^n c^{-nk/2} exp(-(k^2-4k+3)/4) for c > k; 2^{(k-1)/2} (k!/sqrt(k^k))^n exp(-(k^2-4k+3)/4) for c = k, n even; empirical n! P / [(kn/e)^{kn/2} sqrt 2 exp((k^2-4k+3)/4) / (k!)^n]",
        job.echo(None),
    ))
}

fn validate_table(job: &Job) -> Result<(String, bool), Error> {
    let opts = ValidationOptions {
        seed: job.seed(),
        restarts: job.args.restarts,
    };
    let results = run_suite(&opts);
    let passed = results.iter().all(|r| r.passed);
    let text = match job.format() {
        OutputFormat::Csv => to_csv(&results),
        OutputFormat::Json => {
            let rows: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "criterion": r.id, "description": r.description, "passed": r.passed,
                        "metric": fmt_f64(r.metric), "threshold": fmt_f64(r.threshold), "detail": r.detail,
                    })
                })
                .collect();
            let doc = json!({
                "metadata": {"tool": "colgraph", "version": env!("CARGO_PKG_VERSION"),
                             "formula": "validation suite", "config": job.echo(None)},
                "columns": CSV_HEADER.split(',').collect::<Vec<_>>(),
                "rows": rows,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    };
    Ok((text, passed))
}

/// Renders a command to text, returning whether it counts as a success.
pub fn render(command: &Command) -> Result<(String, Option<PathBuf>, bool), Error> {
    let (args, kind) = match command {
        Command::Exact(a) => (a, 0),
        Command::Asym(a) => (a, 1),
        Command::Crit(a) => (a, 2),
        Command::Colorings(a) => (a, 3),
        Command::Expected(a) => (a, 4),
        Command::Converge(a) => (a, 5),
        Command::Validate(a) => (a, 6),
    };
    let job = Job::resolve(args.clone())?;
    let output = job.args.output.clone();
    if kind == 6 {
        let (text, ok) = validate_table(&job)?;
        return Ok((text, output, ok));
    }
    let (table, formula, config) = match kind {
        0 => exact_table(&job)?,
        1 => asym_table(&job)?,
        2 => crit_table(&job)?,
        3 => colorings_table(&job)?,
        4 => expected_table(&job)?,
        _ => converge_table(&job)?,
    };
    let text = match job.format() {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(formula, config),
    };
    Ok((text, output, true))
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_)
        | Error::InvalidWeight { .. }
        | Error::InvalidArgument(_)
        | Error::DimensionMismatch { .. }
        | Error::UnsupportedDimension(_) => EXIT_CONFIG,
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Degenerate { .. } | Error::PositiveEigenvalue { .. } => EXIT_DEGENERATE,
        _ => EXIT_RUNTIME,
    }
}

fn error_kind(code: i32) -> &'static str {
    match code {
        EXIT_CONFIG => "config",
        EXIT_CAP => "cap_exceeded",
        EXIT_DEGENERATE => "degenerate",
        _ => "runtime",
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = render(&cli.command).and_then(|(text, output, ok)| {
        match output {
            Some(path) => std::fs::write(&path, &text)
                .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?,
            None => {
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(text.as_bytes());
            }
        }
        Ok(ok)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VALIDATION,
        Err(err) => {
            let code = exit_code(&err);
            let doc = json!({"error": {"kind": error_kind(code), "message": err.to_string()}});
            eprintln!("{doc}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_parsing() {
        let s = parse_weights(r#"[{"w":[1,1,1],"num":1,"den":1}]"#, 3, 3).unwrap();
        assert_eq!(s, WeightSpec::unit_weight(3, 3, vec![1, 1, 1]).unwrap());
        let s = parse_weights(r#"[{"w":[2,1],"num":1,"den":2}]"#, 2, 3).unwrap();
        assert_eq!(
            s.weight(&MultiIndex::new(vec![2, 1])),
            BigRational::new(1.into(), 2.into())
        );
        assert!(parse_weights(r#"[{"w":[2],"num":1,"den":1}]"#, 1, 3).is_err());
        assert!(parse_weights(r#"[{"w":[3],"num":1,"den":0}]"#, 1, 3).is_err());
        assert!(parse_weights(
            r#"[{"w":[3],"num":1,"den":1},{"w":[3],"num":2,"den":1}]"#,
            1,
            3
        )
        .is_err());
        assert!(parse_weights("not json", 1, 3).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("10:16:2").unwrap(), vec![10, 12, 14, 16]);
        assert_eq!(parse_n_range("1:3").unwrap(), vec![1, 2, 3]);
        assert!(parse_n_range("5:1").is_err());
        assert!(parse_n_range("1:5:0").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), EXIT_CONFIG);
        assert_eq!(
            exit_code(&Error::CapExceeded {
                what: "x",
                value: 9,
                cap: 8
            }),
            EXIT_CAP
        );
        assert_eq!(
            exit_code(&Error::Degenerate {
                index: 0,
                det_abs: 0.0
            }),
            EXIT_DEGENERATE
        );
    }
}
