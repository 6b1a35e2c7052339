//! `hyperchrom`: generate, analyze, verify and batch-sweep oriented hypergraphs.
//!
//! Exit codes: 0 success (including inconclusive solves), 1 I/O or internal
//! error, 2 bad arguments or family spec, 3 invalid document, 4 mode does not
//! apply to the input, 5 a bound exceeded the exact value (a bug).

mod corpus;

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperchrom::bounds::{check_sharpness, evaluate, BoundReport, CsvRow, EvalOptions, SharpnessKind};
use hyperchrom::coloring::{chromatic_with_budget, parse_rational, Witness, DEFAULT_BUDGET};
use hyperchrom::families::FamilySpec;
use hyperchrom::spectral::{spectrum_report, vertex_spectrum, SpectrumTarget, DEFAULT_CLUSTER_TOL};
use hyperchrom::{io as doc, ColoringMode, Error, OrientedHypergraph, SharpnessReport};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn spec(message: impl Into<String>) -> Self {
        CliError::new(2, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::FamilySpec { .. } => 2,
            Error::MalformedDocument(_)
            | Error::UnknownVertex { .. }
            | Error::SignOutsideAlphabet { .. }
            | Error::Invalid(_) => 3,
            Error::ModeMismatch(_) | Error::BoundDomain(_) => 4,
            _ => 1,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::new(1, e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::new(1, e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "hyperchrom", version, about = "Spectral bounds for chromatic numbers of oriented hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the interchange document of a family instance.
    Gen {
        /// Family spec, e.g. `hyperflower:c=3,p=3,k=1`.
        spec: String,
        /// Seed for random families whose spec has no `seed=`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vertex or edge spectrum with trace and consistency checks.
    Spectrum {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Which::Vertex)]
        which: Which,
        /// Eigenvalue cluster tolerance (relative).
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact coloring number and a witness.
    Chromatic {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral bound against the exact number, with the sharpness battery when they meet.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bound, exact number and gap for every (instance, mode) of a corpus.
    Batch {
        /// Directory of documents, or `;`-separated family specs with optional `a..b` ranges.
        #[arg(long)]
        corpus: String,
        /// Instances per random family spec without `seed=`.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// First seed for random family specs without `seed=`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated modes, e.g. `strong,d-proper:2`.
        #[arg(long, default_value = "strong")]
        modes: String,
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Interchange document, `-` for stdin.
    input: Option<String>,
    /// Family spec to generate instead of reading a document.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct ModeArgs {
    /// `strong`, `d-proper`, `q-tailored`, `d-improper`, `edge-strong`, or a full mode like `d-proper:2`.
    #[arg(long)]
    mode: String,
    #[arg(long)]
    d: Option<usize>,
    /// Rational `a/b` or integer.
    #[arg(long)]
    q: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Vertex,
    Edge,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Source {
    fn load(&self) -> Result<(String, OrientedHypergraph), CliError> {
        match (&self.input, &self.family) {
            (_, Some(spec)) => {
                let family: FamilySpec = spec.parse()?;
                Ok((family.to_string(), family.generate()?))
            }
            (Some(path), None) => {
                let text = if path == "-" {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                } else {
                    fs::read_to_string(path).map_err(|e| CliError::new(1, format!("{path}: {e}")))?
                };
                Ok((path.clone(), doc::parse(&text)?))
            }
            (None, None) => Err(CliError::spec("an input document or --family is required")),
        }
    }
}

impl ModeArgs {
    fn resolve(&self) -> Result<ColoringMode, CliError> {
        let need_d = || self.d.ok_or_else(|| CliError::spec(format!("--mode {} needs --d", self.mode)));
        let text = match self.mode.as_str() {
            "d-proper" | "d-improper" => format!("{}:{}", self.mode, need_d()?),
            "q-tailored" => {
                let q = self.q.as_deref().ok_or_else(|| CliError::spec("--mode q-tailored needs --q"))?;
                parse_rational(q).ok_or_else(|| CliError::spec(format!("--q {q:?} is not a rational a/b")))?;
                format!("q-tailored:{q}")
            }
            other => other.to_string(),
        };
        parse_mode(&text)
    }
}

fn parse_mode(text: &str) -> Result<ColoringMode, CliError> {
    text.trim().parse().map_err(|e: Error| CliError::spec(e.to_string()))
}

/// Writes `text` to `out` atomically, or to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|e| CliError::from(e.error))?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::new(1, e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn to_csv(rows: &[CsvRow]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(["instance", "mode", "lambda1", "lambda_n_or_mu1", "bound", "chi", "gap", "sharp", "status"])?;
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::new(1, e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::new(1, e.to_string()))
}

#[derive(Serialize)]
struct ChromaticOutput {
    mode: String,
    status: hyperchrom::ChromaticStatus,
    number: Option<usize>,
    lower: usize,
    upper: usize,
    nodes: u64,
    witness: Witness,
}

#[derive(Serialize)]
struct VerifyOutput {
    instance: String,
    report: BoundReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    sharpness: Vec<SharpnessReport>,
}

fn sharpness_reports(h: &OrientedHypergraph, r: &BoundReport, mode: ColoringMode, tol: f64) -> Vec<SharpnessReport> {
    let (Some(true), Some(chi), Some(solve)) = (r.sharp, r.chromatic, r.solve.as_ref()) else {
        return Vec::new();
    };
    if chi < 2 {
        return Vec::new();
    }
    SharpnessKind::for_mode(mode, r.lambda1, r.lambda_n, chi)
        .into_iter()
        .filter_map(|kind| check_sharpness(h, &solve.witness, kind, tol).ok())
        .collect()
}

fn gen(spec: &str, seed: Option<u64>, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let mut family: FamilySpec = spec.parse()?;
    if let Some(s) = seed.filter(|_| !spec.contains("seed=")) {
        match &mut family {
            FamilySpec::RandomUniform { seed, .. } | FamilySpec::RandomMixed { seed, .. } => *seed = s,
            _ => {}
        }
    }
    emit(out, &doc::serialize(&family.generate()?))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Default)]
struct Tally {
    rows: usize,
    exact: usize,
    inconclusive: usize,
    skipped: usize,
    violations: usize,
    oracle_mismatches: usize,
}

fn batch_row(name: &str, h: &OrientedHypergraph, mode: ColoringMode, opts: &EvalOptions) -> Result<CsvRow, CliError> {
    match evaluate(h, mode, opts) {
        Ok(r) => Ok(CsvRow::from_report(name, &r)),
        Err(Error::ModeMismatch(_)) => Ok(CsvRow::without_report(name, mode, "mode-mismatch")),
        Err(Error::BoundDomain(_)) => Ok(CsvRow::without_report(name, mode, "out-of-domain")),
        Err(e) => Err(CliError::new(1, format!("{name} {mode}: {e}"))),
    }
}

fn batch(
    corpus_spec: &str,
    count: usize,
    seed: u64,
    modes: &str,
    opts: EvalOptions,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let modes: Vec<ColoringMode> =
        modes.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_mode).collect::<Result<_, _>>()?;
    let instances = corpus::load(corpus_spec, count, seed)?;

    let oracle_mismatches: Vec<String> = instances
        .par_iter()
        .filter_map(|inst| {
            let want = inst.oracle.as_ref()?;
            let got = match vertex_spectrum(&inst.hypergraph, opts.cluster_tol) {
                Ok(s) => s.eigenvalues,
                Err(e) => return Some(format!("{}: {e}", inst.name)),
            };
            let ok = got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-7);
            (!ok).then(|| format!("{}: spectrum differs from the closed form", inst.name))
        })
        .collect();

    let jobs: Vec<(usize, ColoringMode)> =
        (0..instances.len()).flat_map(|i| modes.iter().map(move |&m| (i, m))).collect();
    let rows: Vec<CsvRow> = jobs
        .par_iter()
        .map(|&(i, mode)| batch_row(&instances[i].name, &instances[i].hypergraph, mode, &opts))
        .collect::<Result<_, _>>()?;

    let mut tally = Tally { rows: rows.len(), oracle_mismatches: oracle_mismatches.len(), ..Tally::default() };
    for row in &rows {
        match row.status.as_str() {
            "exact" => tally.exact += 1,
            "inconclusive" => tally.inconclusive += 1,
            "violation" => tally.violations += 1,
            _ => tally.skipped += 1,
        }
    }
    let text = match format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => to_json(&rows)?,
    };
    emit(out, &text)?;
    for m in &oracle_mismatches {
        eprintln!("oracle mismatch: {m}");
    }
    for row in rows.iter().filter(|r| r.status == "violation") {
        eprintln!("violation: {} {} bound {:?} chi {:?}", row.instance, row.mode, row.bound, row.chi);
    }
    eprintln!(
        "instances={} rows={} exact={} inconclusive={} skipped={} violations={} oracle_mismatches={}",
        instances.len(),
        tally.rows,
        tally.exact,
        tally.inconclusive,
        tally.skipped,
        tally.violations,
        tally.oracle_mismatches
    );
    Ok(if tally.violations + tally.oracle_mismatches > 0 { ExitCode::from(5) } else { ExitCode::SUCCESS })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Gen { spec, seed, out } => gen(&spec, seed, out.as_deref()),
        Command::Spectrum { source, which, tol, out } => {
            let (_, h) = source.load()?;
            let target = match which {
                Which::Vertex => SpectrumTarget::Vertex,
                Which::Edge => SpectrumTarget::Edge,
            };
            emit(out.as_deref(), &to_json(&spectrum_report(&h, target, tol)?)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Chromatic { source, mode, budget, out } => {
            let (_, h) = source.load()?;
            let mode = mode.resolve()?;
            let r = chromatic_with_budget(&h, mode, budget)?;
            let output = ChromaticOutput {
                mode: mode.to_string(),
                status: r.status,
                number: r.number(),
                lower: r.lower,
                upper: r.upper,
                nodes: r.nodes,
                witness: Witness::new(&h, &r.witness, mode),
            };
            emit(out.as_deref(), &to_json(&output)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { source, mode, tol, budget, format, out } => {
            let (instance, h) = source.load()?;
            let mode = mode.resolve()?;
            let opts = EvalOptions { cluster_tol: tol, budget, ..EvalOptions::default() };
            let report = evaluate(&h, mode, &opts)?;
            let violation = report.violation;
            let text = match format {
                Format::Csv => to_csv(&[CsvRow::from_report(&instance, &report)])?,
                Format::Json => {
                    let sharpness = sharpness_reports(&h, &report, mode, tol);
                    to_json(&VerifyOutput { instance, report, sharpness })?
                }
            };
            emit(out.as_deref(), &text)?;
            Ok(if violation { ExitCode::from(5) } else { ExitCode::SUCCESS })
        }
        Command::Batch { corpus, count, seed, modes, tol, budget, format, out } => {
            let opts = EvalOptions { cluster_tol: tol, budget, ..EvalOptions::default() };
            batch(&corpus, count, seed, &modes, opts, format, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
