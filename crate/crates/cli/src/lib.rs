//! Batch front end: reads tensors and sequences from JSON files, runs one
//! norm or experiment, writes a report.
//!
//! Exit codes: 0 for success, pass, consistency or an unmet hypothesis;
//! 1 for a violation or failed experiment; 2 for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use dbo_core::fourier::bridge_check_coefficients;
use dbo_core::lattice::{holder_triple, parse_exponent, HolderTriple, MultiIndex, WeightedSequence};
use dbo_core::norms::{
    bt_membership_scan, bt_seminorm, mixed_lebesgue_norm, norm_two_order, MembershipConfig, ScanResult,
};
use dbo_core::operator::{apply, CommutatorSlot};
use dbo_core::report::{Report, Verdict};
use dbo_core::tensor::{SymbolSpec, Tensor, TensorSpec, TorusCoefficientSpec};
use dbo_core::verification::{
    boundedness_experiment, compactness_experiment, lemma_x_scan, negative_witness_scan, v_phi_scan, BoundednessParams,
    CompactnessExperiment,
};
use dbo_core::DboError;

pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dbo",
    version,
    about = "Discrete bilinear operators induced by tensors on Z^d"
)]
pub struct Cli {
    /// Worker threads. Results do not depend on this.
    #[arg(long, global = true, env = "DBO_THREADS")]
    pub threads: Option<usize>,

    /// Report destination. Without it the report is printed after the summary.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(flatten)]
    pub thresholds: Thresholds,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Thresholds {
    /// Largest relative change between radii R and 2R counted as stable.
    #[arg(long, global = true, default_value_t = 0.10)]
    pub stability: f64,
    /// Growth factor between radii R and 2R counted as divergence.
    #[arg(long, global = true, default_value_t = 2.0)]
    pub divergence: f64,
    /// Absolute slack for float comparisons against certified bounds.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub slack: f64,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// T(f, g) on the output cube.
    Apply(ApplyArgs),
    /// ‖Θ‖_{ω₁,ω₂,N}; ω₁ = ω₂ = ω unless given.
    Norm(NormArgs),
    /// A single seminorm ‖Θ‖_{α,β,ω,N}.
    Seminorm(SeminormArgs),
    /// Iterated ℓ^r_j ℓ^{p'}_k ℓ^{q'}_ℓ norm.
    MixedNorm(MixedArgs),
    /// Seminorm scan at radii R and 2R.
    BtCheck(BtArgs),
    /// Certified bound against sampled ratios.
    VerifyBound(BoundArgs),
    /// Commutator tail curve.
    VerifyCompactness(CompactArgs),
    /// Quotient growth along j = 2k = 2ℓ.
    Witness(WitnessArgs),
    /// Fourier side against the physical side for closed-form families.
    Bridge(BridgeArgs),
    /// Membership of the convolution-plane tensor built from a symbol.
    LemmaX(LemmaArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TensorArg {
    /// Tensor JSON file.
    #[arg(long)]
    pub tensor: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ApplyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tensor: TensorArg,
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long)]
    pub out_radius: i64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct NormArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tensor: TensorArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub omega: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub omega1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega2: Option<f64>,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub radius: i64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SeminormArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tensor: TensorArg,
    /// Comma-separated, e.g. `1,0`. Zero if omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub omega: f64,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub radius: i64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MixedArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tensor: TensorArg,
    #[arg(long, value_parser = parse_exponent)]
    pub p: f64,
    #[arg(long, value_parser = parse_exponent)]
    pub q: f64,
    #[arg(long)]
    pub radius: i64,
    /// Also report all six nesting orders.
    #[arg(long)]
    pub all_orders: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BtArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tensor: TensorArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub omega: f64,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub radius: i64,
    #[arg(long, default_value_t = 2)]
    pub alpha_max: i64,
    #[arg(long, default_value_t = 2)]
    pub beta_max: i64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BoundArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tensor: TensorArg,
    #[arg(long, value_parser = parse_exponent)]
    pub p: f64,
    #[arg(long, value_parser = parse_exponent)]
    pub q: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub s1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub s2: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub omega: f64,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub radius: i64,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Split point N₁ of the certificate; chosen automatically if omitted.
    #[arg(long = "N1")]
    pub n1: Option<f64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CompactArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tensor: TensorArg,
    /// Multiplier sequence JSON file.
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, value_parser = parse_exponent)]
    pub p: f64,
    #[arg(long, value_parser = parse_exponent)]
    pub q: f64,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub radius: i64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Which argument is multiplied by b (1 or 2).
    #[arg(long, default_value_t = 1)]
    pub slot: u8,
    #[arg(long, value_delimiter = ',', default_values_t = [1e-1, 1e-2, 1e-3, 1e-4])]
    pub epsilons: Vec<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub slope_slack: f64,
    /// Tail curve destination as CSV.
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct WitnessArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tensor: TensorArg,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub omega: f64,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub rmax: i64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BridgeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tensor: TensorArg,
    /// Fourier coefficients of F (sequence JSON).
    #[arg(long)]
    pub f: PathBuf,
    /// Fourier coefficients of G (sequence JSON).
    #[arg(long)]
    pub g: PathBuf,
    /// Input band K: coefficients live in |k|_∞ <= K.
    #[arg(long)]
    pub band: i64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LemmaArgs {
    /// Symbol registry entry, e.g. `{"name": "monomial", "params": {"a": [1], "b": [0]}}`.
    #[arg(long)]
    pub phi: PathBuf,
    #[arg(long)]
    pub d: usize,
    /// Optional torus coefficient `{coeffs, K}`; scans Θ_{V,Φ} instead of Θ_Φ.
    #[arg(long)]
    pub v: Option<PathBuf>,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub radius: i64,
    #[arg(long, default_value_t = 2)]
    pub alpha_max: i64,
    #[arg(long, default_value_t = 2)]
    pub beta_max: i64,
}

/// Failure before a report exists.
#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Json(PathBuf, serde_json::Error),
    Invalid(DboError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Json(p, e) if e.line() > 0 => write!(
                f,
                "{}: malformed JSON at line {} column {}: {e}",
                p.display(),
                e.line(),
                e.column()
            ),
            CliError::Json(p, e) => write!(f, "{}: invalid JSON content: {e}", p.display()),
            CliError::Invalid(e) => write!(f, "{e}"),
        }
    }
}

impl From<DboError> for CliError {
    fn from(e: DboError) -> Self {
        CliError::Invalid(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(path.to_path_buf(), e))
}

fn load_tensor(path: &Path) -> CliResult<Tensor> {
    let spec: TensorSpec = read_json(path)?;
    match spec.build() {
        Err(DboError::Json(e)) => Err(CliError::Json(path.to_path_buf(), e)),
        other => Ok(other?),
    }
}

fn triple(p: f64, q: f64) -> CliResult<HolderTriple> {
    let t = holder_triple(p, q)?;
    t.require_banach_target()?;
    Ok(t)
}

fn multi_index(s: Option<&str>, d: usize) -> CliResult<MultiIndex> {
    let Some(s) = s else {
        return Ok(MultiIndex::zero(d));
    };
    let parsed: std::result::Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    let v = parsed.map_err(|e| DboError::InvalidParameter(format!("bad multi-index {s:?}: {e}")))?;
    if v.len() != d {
        return Err(DboError::DimensionMismatch {
            expected: d,
            found: v.len(),
        }
        .into());
    }
    Ok(MultiIndex::new(&v))
}

fn scan_report(kind: &str, s: ScanResult) -> Report {
    let mut rep = Report::new(kind, Value::Null, Verdict::Computed);
    rep.value = Some(s.value);
    rep.argmax = s.argmax;
    rep.radius = Some(s.radius);
    rep.boundary_ratio = Some(s.boundary_ratio);
    rep
}

/// Runs the parsed command. Returns the report and an optional CSV payload.
pub fn execute(cli: &Cli) -> CliResult<(Report, Option<(PathBuf, String)>)> {
    let th = &cli.thresholds;
    let membership = |alpha_max, beta_max| MembershipConfig {
        alpha_max,
        beta_max,
        stability: th.stability,
        divergence: th.divergence,
    };
    let mut csv = None;
    let mut rep = match &cli.command {
        Command::Apply(a) => {
            let t = load_tensor(&a.tensor.tensor)?;
            let f: WeightedSequence = read_json(&a.f)?;
            let g: WeightedSequence = read_json(&a.g)?;
            if a.out_radius < 0 {
                return Err(DboError::InvalidParameter("out-radius must be >= 0".into()).into());
            }
            let out = apply(&t, &f, &g, a.out_radius)?;
            let mut rep = Report::new("apply", Value::Null, Verdict::Computed);
            rep.radius = Some(a.out_radius);
            rep.details = json!({ "output": out });
            rep
        }
        Command::Norm(a) => {
            let t = load_tensor(&a.tensor.tensor)?;
            let (w1, w2) = (a.omega1.unwrap_or(a.omega), a.omega2.unwrap_or(a.omega));
            scan_report("norm", norm_two_order(&t, w1, w2, a.n, a.radius)?)
        }
        Command::Seminorm(a) => {
            let t = load_tensor(&a.tensor.tensor)?;
            let alpha = multi_index(a.alpha.as_deref(), t.dim())?;
            let beta = multi_index(a.beta.as_deref(), t.dim())?;
            scan_report("seminorm", bt_seminorm(&t, &alpha, &beta, a.omega, a.n, a.radius)?)
        }
        Command::MixedNorm(a) => {
            let t = load_tensor(&a.tensor.tensor)?;
            let tr = holder_triple(a.p, a.q)?;
            let m = mixed_lebesgue_norm(&t, &tr, a.radius, a.all_orders)?;
            let mut rep = Report::new("mixed-norm", Value::Null, Verdict::Computed);
            rep.value = Some(m.value);
            rep.radius = Some(a.radius);
            rep.details = serde_json::to_value(&m).map_err(DboError::from)?;
            rep
        }
        Command::BtCheck(a) => {
            let t = load_tensor(&a.tensor.tensor)?;
            bt_membership_scan(&t, a.omega, a.n, &membership(a.alpha_max, a.beta_max), a.radius)?
        }
        Command::VerifyBound(a) => {
            let t = load_tensor(&a.tensor.tensor)?;
            let mut p = BoundednessParams::new(triple(a.p, a.q)?, a.omega, a.n, a.radius)
                .with_smoothness(a.s1, a.s2)
                .with_sampling(a.samples, a.seed);
            p.slack = th.slack;
            p.n1 = a.n1;
            boundedness_experiment(&t, &p)?
        }
        Command::VerifyCompactness(a) => {
            let t = load_tensor(&a.tensor.tensor)?;
            let b: WeightedSequence = read_json(&a.b)?;
            let mut e = CompactnessExperiment::new(b, triple(a.p, a.q)?, a.n, a.radius);
            e.samples = a.samples;
            e.seed = a.seed;
            e.epsilons = a.epsilons.clone();
            e.slope_slack = a.slope_slack;
            e.slot = match a.slot {
                1 => CommutatorSlot::First,
                2 => CommutatorSlot::Second,
                s => return Err(DboError::InvalidParameter(format!("slot must be 1 or 2, got {s}")).into()),
            };
            let (curve, rep) = compactness_experiment(&t, &e)?;
            if let Some(path) = &a.csv {
                csv = Some((path.clone(), curve.to_csv()));
            }
            rep
        }
        Command::Witness(a) => {
            let t = load_tensor(&a.tensor.tensor)?;
            negative_witness_scan(&t, a.omega, a.n, a.rmax, th.divergence)?
        }
        Command::Bridge(a) => {
            let t = load_tensor(&a.tensor.tensor)?;
            let f: WeightedSequence = read_json(&a.f)?;
            let g: WeightedSequence = read_json(&a.g)?;
            bridge_check_coefficients(&t, &f, &g, a.band)?
        }
        Command::LemmaX(a) => {
            let spec: SymbolSpec = read_json(&a.phi)?;
            let phi = spec.build()?;
            let cfg = membership(a.alpha_max, a.beta_max);
            match &a.v {
                None => lemma_x_scan(a.d, phi, a.n, &cfg, a.radius)?,
                Some(path) => {
                    let v: TorusCoefficientSpec = read_json(path)?;
                    if v.coeffs.dim() != a.d {
                        return Err(DboError::DimensionMismatch {
                            expected: a.d,
                            found: v.coeffs.dim(),
                        }
                        .into());
                    }
                    v_phi_scan(v.build(), phi, a.n, &cfg, a.radius)?
                }
            }
        }
    };
    embed_config(&mut rep, cli);
    Ok((rep, csv))
}

/// The resolved configuration as stored in reports. Thread count and output
/// paths are left out so that reports do not depend on them.
pub fn resolved_config(cli: &Cli) -> Value {
    let mut v = serde_json::to_value(&cli.command).expect("config serializes");
    v["thresholds"] = serde_json::to_value(&cli.thresholds).expect("thresholds serialize");
    v
}

fn embed_config(rep: &mut Report, cli: &Cli) {
    let config = resolved_config(cli);
    match &mut rep.params {
        Value::Object(m) => {
            m.insert("config".into(), config);
        }
        other => *other = json!({ "config": config }),
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn run_parsed(cli: &Cli) -> CliResult<i32> {
    let (rep, csv) = execute(cli)?;
    let text = rep.to_json_pretty() + "\n";
    println!("{}", rep.summary());
    match &cli.out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    if let Some((path, body)) = csv {
        write_file(&path, &body)?;
    }
    Ok(rep.verdict.exit_code())
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be >= 1");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| run_parsed(&cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
