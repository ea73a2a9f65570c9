//! Command-line front end. Every command produces one JSON document and an
//! exit status: 0 holds, 1 input error, 2 inconclusive, 3 violated.

mod generate;
mod sweep;

pub use generate::{generate_instance, GeneratedInstance, SweepParams};
pub use sweep::{run_instance, run_sweep, SweepOutcome, SweepRecord, SweepSummary};

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rug::Rational;
use serde_json::{json, Value};

use crate::dmbound::{
    certificate_json, interval_json, reduce_vandermonde, report_json, roots_json, verify, GraphInput, HintPair,
    Instance, Variant, Verdict, VerifyOptions,
};
use crate::error::{Error, Result};
use crate::graph::{parse_graph_json, preset_edges, Preset};
use crate::poly::{parse_polynomial, Polynomial};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_VIOLATED: i32 = 3;

pub const MAX_PRECISION: u32 = 1024;

#[derive(Parser, Debug)]
#[command(name = "rootsep", version, about = "Generalized Davenport-Mahler bounds with certified verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check one bound on one polynomial and graph.
    Verify(VerifyArgs),
    /// Run a seeded randomized campaign.
    Sweep(SweepArgs),
    /// Dump the Vandermonde reduction.
    Certificate(CertificateArgs),
    /// Print M(P), |Disc(P)|, |sDisc_{d-r}(P)|, r and d.
    Invariants(InvariantsArgs),
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    /// Polynomial as text ("(x-1)^2*x"), JSON coefficients, or @file.
    #[arg(long)]
    pub poly: String,
    /// Working precision in bits (power of two, 64..=1024).
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    /// Graph JSON {"edges": [[i, j], ...]} on canonical root indices, or @file.
    #[arg(long, conflicts_with = "preset")]
    pub graph: Option<String>,
    /// path, star_max, complete, nearest_neighbor or random.
    #[arg(long)]
    pub preset: Option<String>,
    /// Seed for the random preset.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[command(flatten)]
    pub graph: GraphArgs,
    /// classical, main, remark_degree, remark_pairs or sep_product.
    #[arg(long, default_value = "main")]
    pub variant: String,
    /// Highest precision tried before giving up.
    #[arg(long, default_value_t = MAX_PRECISION)]
    pub ceiling: u32,
    /// JSON list of {"i", "j", "delta"} for remark_pairs.
    #[arg(long)]
    pub hints: Option<String>,
    /// Comma-separated root indices for sep_product (default: all).
    #[arg(long, value_delimiter = ',')]
    pub subset: Option<Vec<usize>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 12)]
    pub max_degree: usize,
    #[arg(long, default_value_t = 4)]
    pub max_multiplicity: u32,
    /// Comma-separated presets drawn from.
    #[arg(long, value_delimiter = ',', default_value = "path,star_max,complete,nearest_neighbor,random")]
    pub preset: Vec<String>,
    #[arg(long, default_value = "main")]
    pub variant: String,
    #[arg(long, default_value_t = 128)]
    pub precision: u32,
    #[arg(long, default_value_t = 512)]
    pub ceiling: u32,
    /// Put two roots at exactly this rational distance (e.g. 1/1000).
    #[arg(long)]
    pub force_cluster: Option<String>,
    /// Include one record per instance in the output.
    #[arg(long)]
    pub records: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CertificateArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Validated settings shared by the commands.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub variant: Variant,
    pub precision: u32,
    pub ceiling: u32,
    pub sweep: Option<SweepParams>,
    pub out: Option<PathBuf>,
}

fn check_precision(name: &str, p: u32) -> Result<()> {
    if !(64..=MAX_PRECISION).contains(&p) || !p.is_power_of_two() {
        return Err(Error::Config(format!("{name} must be a power of two in 64..=1024, got {p}")));
    }
    Ok(())
}

impl RunConfig {
    pub fn new(variant: Variant, precision: u32, ceiling: u32, out: Option<PathBuf>) -> Result<Self> {
        check_precision("precision", precision)?;
        check_precision("ceiling", ceiling)?;
        if ceiling < precision {
            return Err(Error::Config(format!("ceiling {ceiling} is below precision {precision}")));
        }
        Ok(Self { variant, precision, ceiling, sweep: None, out })
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { precision: self.precision, ceiling: self.ceiling, ..Default::default() }
    }
}

/// Exit status and the JSON document of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => Ok(s.to_string()),
    }
}

fn read_poly(a: &PolyArgs) -> Result<Polynomial> {
    parse_polynomial(&read_arg(&a.poly)?, a.precision)
}

fn graph_input(a: &GraphArgs) -> Result<GraphInput> {
    match (&a.graph, &a.preset) {
        (Some(g), _) => Ok(GraphInput::Edges(parse_graph_json(&read_arg(g)?)?)),
        (None, Some(p)) => Ok(GraphInput::Preset { preset: p.parse()?, seed: a.seed }),
        (None, None) => Ok(GraphInput::Edges(Vec::new())),
    }
}

fn parse_hints(s: &str) -> Result<Vec<HintPair>> {
    serde_json::from_str(&read_arg(s)?).map_err(|e| Error::InvalidHint(e.to_string()))
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::BothZero => "both_zero",
        Error::DegreeTooSmall { .. } => "degree_too_small",
        Error::IndistinguishableRoots { .. } => "indistinguishable_roots",
        Error::NoDifferentRoot { .. } => "no_different_root",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::JensenUnavailable { .. } => "jensen_unavailable",
        Error::DuplicateNodes { .. } => "duplicate_nodes",
        Error::Ragged { .. } => "ragged",
        Error::LengthMismatch { .. } => "length_mismatch",
        Error::InvalidGraph(_) => "invalid_graph",
        Error::Precondition(_) => "precondition",
        Error::InvalidHint(_) => "invalid_hint",
        Error::CertificateInconclusive { .. } => "certificate_inconclusive",
        Error::Config(_) => "config",
        Error::Io(_) => "io",
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": error_kind(e), "message": e.to_string() } })
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds => EXIT_HOLDS,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        Verdict::Violated => EXIT_VIOLATED,
    }
}

fn run_verify(a: &VerifyArgs) -> Result<(i32, Value, Option<PathBuf>)> {
    let cfg = RunConfig::new(a.variant.parse()?, a.poly.precision, a.ceiling, a.out.clone())?;
    let poly = read_poly(&a.poly)?;
    let graph = graph_input(&a.graph)?;
    let mut opts = cfg.verify_options();
    if let Some(h) = &a.hints {
        opts.hints = parse_hints(h)?;
    }
    opts.subset = a.subset.clone();
    let v = verify(&poly, &graph, cfg.variant, &opts)?;
    Ok((verdict_code(v.report.verdict), report_json(&v), cfg.out))
}

fn run_sweep_cmd(a: &SweepArgs) -> Result<(i32, Value, Option<PathBuf>)> {
    let mut cfg = RunConfig::new(a.variant.parse()?, a.precision, a.ceiling, a.out.clone())?;
    let presets = a.preset.iter().map(|p| p.parse()).collect::<Result<Vec<Preset>>>()?;
    let force_cluster = match &a.force_cluster {
        Some(s) => {
            let q: Rational = s.parse().map_err(|_| Error::Config(format!("bad cluster distance '{s}'")))?;
            if q <= 0 {
                return Err(Error::Config("cluster distance must be positive".into()));
            }
            Some(q)
        }
        None => None,
    };
    if a.max_degree < 2 || a.max_multiplicity < 1 {
        return Err(Error::Config("need max-degree >= 2 and max-multiplicity >= 1".into()));
    }
    let params = SweepParams {
        count: a.count,
        seed: a.seed,
        max_degree: a.max_degree,
        max_multiplicity: a.max_multiplicity,
        presets,
        force_cluster,
    };
    cfg.sweep = Some(params.clone());
    let outcome = run_sweep(&params, cfg.variant, &cfg.verify_options());
    let s = &outcome.summary;
    let code = if s.violations > 0 {
        EXIT_VIOLATED
    } else if s.clean() {
        EXIT_HOLDS
    } else {
        EXIT_INCONCLUSIVE
    };
    let mut doc = json!({
        "params": {
            "count": params.count,
            "seed": params.seed,
            "max_degree": params.max_degree,
            "max_multiplicity": params.max_multiplicity,
            "presets": params.presets,
            "force_cluster": params.force_cluster.as_ref().map(|q| q.to_string()),
            "variant": cfg.variant.name(),
            "precision_bits": cfg.precision,
            "ceiling_bits": cfg.ceiling,
        },
        "summary": s,
    });
    if a.records {
        doc["records"] = serde_json::to_value(&outcome.records).expect("records serialize");
    }
    Ok((code, doc, cfg.out))
}

fn run_certificate(a: &CertificateArgs) -> Result<(i32, Value, Option<PathBuf>)> {
    let cfg = RunConfig::new(Variant::Main, a.poly.precision, a.poly.precision, a.out.clone())?;
    let inst = Instance::new(read_poly(&a.poly)?, cfg.precision)?;
    let edges = match graph_input(&a.graph)? {
        GraphInput::Edges(e) => e,
        GraphInput::Preset { preset, seed } => {
            use rand::SeedableRng;
            preset_edges(preset, &inst.roots, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))?
        }
    };
    let g = inst.graph(&edges)?;
    let cert = reduce_vandermonde(&inst.roots, &g)?;
    let code = if cert.identity_certified && cert.hadamard_certified { EXIT_HOLDS } else { EXIT_INCONCLUSIVE };
    let doc = json!({
        "polynomial": inst.poly.render(),
        "roots": roots_json(&inst.roots),
        "graph": {
            "edges": g.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "in_degrees": g.in_degrees(),
        },
        "certificate": certificate_json(&cert, true),
        "precision_bits": inst.precision(),
    });
    Ok((code, doc, cfg.out))
}

fn run_invariants(a: &InvariantsArgs) -> Result<(i32, Value, Option<PathBuf>)> {
    let cfg = RunConfig::new(Variant::Main, a.poly.precision, a.poly.precision, a.out.clone())?;
    let inst = Instance::new(read_poly(&a.poly)?, cfg.precision)?;
    let inv = &inst.invariants;
    let doc = json!({
        "polynomial": inst.poly.render(),
        "d": inv.degree,
        "r": inv.distinct,
        "mahler": interval_json(&inv.mahler),
        "disc_abs": interval_json(&inv.disc_abs),
        "sdisc_index": inv.sdisc_index,
        "sdisc_abs": interval_json(&inv.sdisc_abs),
        "sdisc_abs_from_roots": interval_json(&inv.sdisc_abs_roots),
        "sdisc_exact": inv.exact_sdisc.as_ref().map(|s| s.value.to_string()),
        "sdisc_abs_sq_exact": inv.exact_sdisc.as_ref().map(|s| s.abs_sq.to_string()),
        "roots": roots_json(&inst.roots),
        "precision_bits": inst.precision(),
    });
    Ok((EXIT_HOLDS, doc, cfg.out))
}

/// Runs one parsed command, writing the document to `--out` when given.
pub fn run(cli: &Cli) -> Outcome {
    let (result, out) = match &cli.command {
        Command::Verify(a) => (run_verify(a), a.out.clone()),
        Command::Sweep(a) => (run_sweep_cmd(a), a.out.clone()),
        Command::Certificate(a) => (run_certificate(a), a.out.clone()),
        Command::Invariants(a) => (run_invariants(a), a.out.clone()),
    };
    let (mut code, json) = match result {
        Ok((c, j, _)) => (c, j),
        Err(e) => (EXIT_INPUT, error_json(&e)),
    };
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&json).expect("json renders");
        if let Err(e) = write_atomic(&path, &text) {
            code = EXIT_INPUT;
            return Outcome { code, json: error_json(&e) };
        }
    }
    Outcome { code, json }
}

/// Parses `args` (program name first) and runs. Usage errors exit 1.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_HOLDS,
                _ => EXIT_INPUT,
            };
            Outcome { code, json: json!({ "usage": e.to_string() }) }
        }
    }
}
