//! `ulz`: batch front end for the unizeros library.
//!
//! Every command emits one JSON object per result line (or CSV with
//! `--format csv`), floats rendered to 12 significant digits so output is
//! diffable across platforms. Files named by `--out` are written atomically
//! via a temp file in the same directory. Exit status: 0 on success, 1 if
//! any emitted record carries `"pass": false`, 2 for usage or input errors.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, ensure, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use serde_json::{json, Value};
use unizeros::families::two_zero_cosine_family;
use unizeros::l1::{verify_l1_lower, verify_l1_upper, windowed_l1, CosineSparse};
use unizeros::scan::{
    fekete_density, parse_checkpoint, periodic_tail_experiment, resume_driven, scan_family_driven,
    Checkpoint, FamilyTag, ScanMode, ScanOutcome, ScanProgress,
};
use unizeros::transforms::self_reciprocal_to_cosine;
use unizeros::zeros::{
    count_period_zeros_exact, format_sig12, nz_unit_circle, nz_unit_circle_float,
};
use unizeros::Poly;

#[derive(Parser)]
#[command(
    name = "ulz",
    version,
    about = "Unit-circle zero counts, family scans, and norm-bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count unit-circle zeros of one polynomial
    Count(CountArgs),
    /// Aggregate zero counts over a coefficient family
    Scan(ScanArgs),
    /// Zero densities of the Legendre-symbol polynomials
    Fekete(FeketeArgs),
    /// Build a two-period-zero cosine sum and count its zeros
    Counterexample(CounterexampleArgs),
    /// Check the norm inequalities on one input
    Verify(VerifyArgs),
    /// Zero growth of eventually periodic coefficient sequences
    Periodic(PeriodicArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Jsonl,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Write results to this file atomically instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutFormat::Jsonl)]
    format: OutFormat,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PolyInput {
    /// Inline coefficients, ascending powers, integers or p/q: "1,-1,1"
    #[arg(long)]
    coeffs: Option<String>,
    /// JSON file: {"degree": d, "coeffs": ["1", "-1", "1"]}
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: PolyInput,
    /// Certified exact count (the default)
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Count sign changes on a floating grid instead
    #[arg(long)]
    float: bool,
    /// Grid size for --float; defaults to 32 * degree
    #[arg(long, requires = "float")]
    grid: Option<usize>,
    /// Zero-cluster tolerance for --float
    #[arg(long, requires = "float")]
    tol: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ScanArgs {
    /// Family to enumerate: srl or skew
    #[arg(long, required_unless_present = "resume")]
    family: Option<String>,
    /// Degree of the family members
    #[arg(long, required_unless_present = "resume")]
    n: Option<usize>,
    /// Visit every member (the default)
    #[arg(long, conflicts_with = "sample")]
    exhaustive: bool,
    /// Draw this many seeded members instead of enumerating
    #[arg(long)]
    sample: Option<u64>,
    /// Seed for --sample
    #[arg(long, default_value_t = 0, requires = "sample")]
    seed: u64,
    /// Worker threads; UL_WORKERS overrides the default
    #[arg(long)]
    workers: Option<usize>,
    /// Continue from a checkpoint file instead of starting fresh
    #[arg(long, conflicts_with_all = ["family", "n", "exhaustive", "sample", "seed"])]
    resume: Option<PathBuf>,
    /// Keep this checkpoint file current while the scan runs
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FeketeArgs {
    /// One prime modulus
    #[arg(long, required_unless_present = "n_list")]
    n: Option<u64>,
    /// Comma-separated prime moduli
    #[arg(long = "n-list", conflicts_with = "n")]
    n_list: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Family parameter; the cosine sum has degree 4n+1
    #[arg(long)]
    n: usize,
    /// Assert the two-simple-zeros contract and emit pass/fail
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct VerifyInput {
    /// Self-reciprocal even-degree polynomial, ascending powers: "1,-1,1"
    #[arg(long)]
    coeffs: Option<String>,
    /// JSON file with the same polynomial shape as --coeffs
    #[arg(long)]
    file: Option<PathBuf>,
    /// Cosine sum given directly as "freq:amp" terms: "0:1,4:-0.5"
    #[arg(long)]
    sparse: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: VerifyInput,
    /// Force the zero-count parameter of the upper bound
    #[arg(long = "k-bound")]
    k_bound: Option<usize>,
    /// Also measure the windowed norm on [-delta, delta]
    #[arg(long, conflicts_with = "sparse")]
    delta: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PeriodicArgs {
    /// Repeating coefficient block, e.g. "1,-1"
    #[arg(long)]
    block: String,
    /// Coefficients preceding the periodic tail
    #[arg(long)]
    prefix: Option<String>,
    /// Degrees to count at
    #[arg(long = "n-list", default_value = "16,32,64,128")]
    n_list: String,
    /// Assert a positive fitted slope and emit pass/fail
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("ulz: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Count(a) => run_count(a),
        Command::Scan(a) => run_scan(a),
        Command::Fekete(a) => run_fekete(a),
        Command::Counterexample(a) => run_counterexample(a),
        Command::Verify(a) => run_verify(a),
        Command::Periodic(a) => run_periodic(a),
    }
}

fn run_count(a: CountArgs) -> anyhow::Result<bool> {
    let p = load_poly(&a.input)?;
    let report = if a.float {
        let grid = a.grid.unwrap_or(32 * p.degree().max(1));
        nz_unit_circle_float(&p, grid, a.tol.unwrap_or(1e-9))?
    } else {
        nz_unit_circle(&p)?
    };
    let mut rec = serde_json::to_value(&report)?;
    rec["input"] = json!(p.to_string());
    rec["degree"] = json!(p.degree());
    emit(&[rec], &a.output)
}

fn run_scan(a: ScanArgs) -> anyhow::Result<bool> {
    let workers = resolve_workers(a.workers)?;

    // The driver keeps the checkpoint file current between batches; a write
    // failure stops the scan and surfaces here.
    let mut write_err: Option<anyhow::Error> = None;
    let checkpoint_path = a.checkpoint.clone();
    let mut driver = |cp: &Checkpoint| {
        let Some(path) = &checkpoint_path else {
            return ScanProgress::Continue;
        };
        let step = serde_json::to_string(cp)
            .map_err(anyhow::Error::from)
            .and_then(|text| atomic_write(path, &text));
        match step {
            Ok(()) => ScanProgress::Continue,
            Err(e) => {
                write_err = Some(e);
                ScanProgress::Stop
            }
        }
    };

    let outcome = if let Some(path) = &a.resume {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cp = parse_checkpoint(&text)?;
        resume_driven(&cp, workers, &mut driver)?
    } else {
        let family = a.family.as_deref().expect("clap requires --family");
        let n = a.n.expect("clap requires --n");
        let tag = parse_family(family)?;
        let mode = match a.sample {
            Some(count) => ScanMode::Sample {
                count,
                seed: a.seed,
            },
            None => ScanMode::Exhaustive,
        };
        scan_family_driven(tag, n, mode, workers, &mut driver)?
    };
    if let Some(e) = write_err {
        return Err(e.context("writing the checkpoint file"));
    }
    let record = match outcome {
        ScanOutcome::Done(record) => record,
        ScanOutcome::Stopped(_) => bail!("scan stopped without a driver error"),
    };
    if let Some(path) = &a.checkpoint {
        atomic_write(path, &record.checkpoint)?;
    }
    emit(&[serde_json::to_value(&record)?], &a.output)
}

fn run_fekete(a: FeketeArgs) -> anyhow::Result<bool> {
    let ps = match (&a.n, &a.n_list) {
        (Some(p), None) => vec![*p],
        (None, Some(list)) => parse_u64_list(list)?,
        _ => unreachable!("clap enforces exactly one of --n / --n-list"),
    };
    let rows = fekete_density(&ps)?;
    let records = rows
        .iter()
        .map(serde_json::to_value)
        .collect::<Result<Vec<_>, _>>()?;
    emit(&records, &a.output)
}

fn run_counterexample(a: CounterexampleArgs) -> anyhow::Result<bool> {
    let c = two_zero_cosine_family(a.n)?;
    let report = count_period_zeros_exact(&c)?;
    let mut rec = serde_json::to_value(&report)?;
    rec["n"] = json!(a.n);
    rec["degree"] = json!(c.degree());
    if a.check {
        let half_pi = std::f64::consts::FRAC_PI_2;
        let ok = report.total_with_multiplicity == 2
            && report.distinct.len() == 2
            && report.distinct.iter().all(|e| e.multiplicity == 1 && e.certified)
            && (report.distinct[0].location + half_pi).abs() <= 1e-10
            && (report.distinct[1].location - half_pi).abs() <= 1e-10;
        rec["check"] = json!("two-simple-zeros");
        rec["pass"] = json!(ok);
    }
    emit(&[rec], &a.output)
}

fn run_verify(a: VerifyArgs) -> anyhow::Result<bool> {
    let (q, poly, input_id) = match (&a.input.sparse, &a.input.coeffs, &a.input.file) {
        (Some(s), None, None) => (parse_sparse(s)?, None, format!("sparse:{s}")),
        _ => {
            let p = load_poly(&PolyInput {
                coeffs: a.input.coeffs.clone(),
                file: a.input.file.clone(),
            })?;
            let c = self_reciprocal_to_cosine(&p)?;
            let id = p.to_string();
            (CosineSparse::from_cosine_poly(&c), Some(p), id)
        }
    };

    let mut records = Vec::new();
    for report in verify_l1_lower(&q, &input_id)? {
        records.push(serde_json::to_value(&report)?);
    }
    records.push(serde_json::to_value(&verify_l1_upper(
        &q,
        a.k_bound,
        &input_id,
    )?)?);
    if let Some(delta) = a.delta {
        let p = poly.expect("clap rejects --delta with --sparse");
        let quad = windowed_l1(&p, delta)?;
        let mut rec = serde_json::to_value(&quad)?;
        rec["check"] = json!("l1-window");
        rec["delta"] = json!(delta);
        rec["input_id"] = json!(input_id);
        records.push(rec);
    }
    emit(&records, &a.output)
}

fn run_periodic(a: PeriodicArgs) -> anyhow::Result<bool> {
    let block = parse_coeff_list(&a.block).context("in --block")?;
    let prefix = match &a.prefix {
        Some(s) => parse_coeff_list(s).context("in --prefix")?,
        None => Vec::new(),
    };
    let ns = parse_usize_list(&a.n_list).context("in --n-list")?;
    let report = periodic_tail_experiment(&prefix, &block, &ns)?;
    let mut rec = serde_json::to_value(&report)?;
    if a.check {
        rec["check"] = json!("positive-slope");
        rec["pass"] = json!(report.alpha > 0.0);
    }
    emit(&[rec], &a.output)
}

fn parse_family(s: &str) -> anyhow::Result<FamilyTag> {
    match s {
        "srl" => Ok(FamilyTag::SelfReciprocalLittlewood),
        "skew" => Ok(FamilyTag::SkewReciprocalLittlewood),
        "fekete" => bail!("the fekete family is indexed by primes, not enumerated; use the fekete subcommand"),
        other => bail!("unknown family '{other}' (expected srl, skew, or fekete)"),
    }
}

fn resolve_workers(flag: Option<usize>) -> anyhow::Result<usize> {
    let workers = match flag {
        Some(w) => w,
        None => match std::env::var("UL_WORKERS") {
            Ok(s) => s
                .trim()
                .parse::<usize>()
                .map_err(|_| anyhow!("UL_WORKERS must be a positive integer, got '{s}'"))?,
            Err(std::env::VarError::NotPresent) => std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            Err(e) => return Err(anyhow!("reading UL_WORKERS: {e}")),
        },
    };
    ensure!(workers >= 1, "worker count must be at least 1");
    Ok(workers)
}

fn parse_coeff_list(s: &str) -> anyhow::Result<Vec<BigRational>> {
    s.split(',')
        .enumerate()
        .map(|(i, tok)| {
            let t = tok.trim();
            BigRational::from_str(t)
                .map_err(|_| anyhow!("coefficient {i} ('{t}') is not an integer or p/q rational"))
        })
        .collect()
}

fn parse_u64_list(s: &str) -> anyhow::Result<Vec<u64>> {
    s.split(',')
        .enumerate()
        .map(|(i, tok)| {
            let t = tok.trim();
            t.parse::<u64>()
                .map_err(|_| anyhow!("entry {i} ('{t}') is not a nonnegative integer"))
        })
        .collect()
}

fn parse_usize_list(s: &str) -> anyhow::Result<Vec<usize>> {
    parse_u64_list(s).map(|v| v.into_iter().map(|x| x as usize).collect())
}

fn parse_sparse(s: &str) -> anyhow::Result<CosineSparse> {
    let terms = s
        .split(',')
        .enumerate()
        .map(|(i, tok)| {
            let t = tok.trim();
            let (freq, amp) = t
                .split_once(':')
                .ok_or_else(|| anyhow!("term {i} ('{t}') is not freq:amp"))?;
            let f = freq
                .trim()
                .parse::<u64>()
                .map_err(|_| anyhow!("term {i}: frequency '{}' is not a nonnegative integer", freq.trim()))?;
            let a = amp
                .trim()
                .parse::<f64>()
                .map_err(|_| anyhow!("term {i}: amplitude '{}' is not a number", amp.trim()))?;
            Ok((f, a))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(CosineSparse::new(terms)?)
}

fn load_poly(input: &PolyInput) -> anyhow::Result<Poly> {
    match (&input.coeffs, &input.file) {
        (Some(s), None) => Ok(Poly::new(parse_coeff_list(s)?)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<Poly>(&text)
                .map_err(|e| anyhow!("{}: {e}", path.display()))
        }
        _ => unreachable!("clap enforces exactly one of --coeffs / --file"),
    }
}

/// Floats become 12-significant-digit strings; integers stay numeric.
fn render_floats(v: &Value) -> Value {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => {
            Value::String(format_sig12(n.as_f64().expect("json number")))
        }
        Value::Array(items) => Value::Array(items.iter().map(render_floats).collect()),
        Value::Object(map) => Value::Object(
            map.iter()
                .map(|(k, x)| (k.clone(), render_floats(x)))
                .collect(),
        ),
        other => other.clone(),
    }
}

fn any_failing_pass(v: &Value) -> bool {
    match v {
        Value::Object(map) => map
            .iter()
            .any(|(k, x)| (k == "pass" && x == &Value::Bool(false)) || any_failing_pass(x)),
        Value::Array(items) => items.iter().any(any_failing_pass),
        _ => false,
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(['"', ',', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::String(s) => csv_escape(s),
        other => csv_escape(&other.to_string()),
    }
}

/// One header row over the union of record keys (first-seen order), then
/// one row per record; composite values are embedded as JSON text.
fn to_csv(records: &[Value]) -> anyhow::Result<String> {
    let mut keys: Vec<&str> = Vec::new();
    for r in records {
        let obj = r
            .as_object()
            .ok_or_else(|| anyhow!("csv output needs object records"))?;
        for k in obj.keys() {
            if !keys.contains(&k.as_str()) {
                keys.push(k);
            }
        }
    }
    let mut out = String::new();
    out.push_str(
        &keys
            .iter()
            .map(|k| csv_escape(k))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    for r in records {
        let obj = r.as_object().expect("checked above");
        let row: Vec<String> = keys
            .iter()
            .map(|k| obj.get(*k).map(csv_cell).unwrap_or_default())
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn atomic_write(path: &Path, text: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("out");
    let tmp = dir.join(format!("{name}.tmp-{}", std::process::id()));
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(anyhow::Error::from(e)
            .context(format!("renaming {} into place", path.display())));
    }
    Ok(())
}

/// Renders, writes, and reports whether every `pass` field (at any depth)
/// is true.
fn emit(records: &[Value], output: &OutputArgs) -> anyhow::Result<bool> {
    let rendered: Vec<Value> = records.iter().map(render_floats).collect();
    let text = match output.format {
        OutFormat::Jsonl => {
            let mut s = String::new();
            for r in &rendered {
                s.push_str(&serde_json::to_string(r)?);
                s.push('\n');
            }
            s
        }
        OutFormat::Csv => to_csv(&rendered)?,
    };
    match &output.out {
        Some(path) => atomic_write(path, &text)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(!rendered.iter().any(any_failing_pass))
}
