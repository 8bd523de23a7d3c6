//! riglab: command-line front end for the exact rigidity toolkit.
//!
//! Subcommands mirror the library layers: `ideal gen` and `ideal eliminate`
//! build determinantal rigidity ideals and eliminate the change variables by
//! both routes, `rigidity compute` runs the exact pattern-enumeration search,
//! `bounds` prints the order/degree bound report, and `verify-paper` reruns
//! the whole worked-example suite.
//!
//! Reports are JSON on stdout (verify-paper prints a human pass/fail table
//! instead; its JSON goes behind `--json FILE`). Identical flags produce
//! byte-identical reports: wall-clock fields appear only under `--timings`,
//! and every randomized suite is driven by the `--seed` flag. The env var
//! RIGLAB_CAPS=BASIS,TERMS overrides the Groebner resource caps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
//! exhaustion.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::{env, fs};

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use riglab_core::cyclo::bounds_report;
use riglab_core::detideals::{
    elimination_ideal_direct_with, elimination_ideal_reduced_with, rigidity_ideal, Pattern,
};
use riglab_core::exactla::{bareiss_rank, MatrixJson, RationalMatrix};
use riglab_core::groebner::{Caps, Ideal};
use riglab_core::polyring::parse_rational;
use riglab_core::rigidity::{
    family_instance, rig_exact_with, witness_changes, DocumentedRigidity, FamilyKind, RigOptions,
};
use riglab_core::verify::{run_all, CheckResult, VerifyConfig};
use riglab_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "riglab",
    version,
    about = "Exact matrix rigidity: determinantal ideals, elimination, certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and eliminate pattern-augmented minor ideals.
    Ideal {
        #[command(subcommand)]
        action: IdealAction,
    },
    /// Exact rigidity of a rational matrix.
    Rigidity {
        #[command(subcommand)]
        action: RigidityAction,
    },
    /// Root-order and elimination-degree bound report.
    Bounds(BoundsArgs),
    /// Rerun the worked-example verification suite.
    VerifyPaper(VerifyArgs),
}

#[derive(Subcommand)]
enum IdealAction {
    /// Emit the generators of I(n, r, pattern): the (r+1)-minors of the
    /// pattern-augmented generic matrix.
    Gen(IdealArgs),
    /// Eliminate the change variables by both routes and cross-check.
    Eliminate(IdealArgs),
}

#[derive(Args)]
struct IdealArgs {
    /// Matrix size n.
    #[arg(long)]
    n: usize,
    /// Target rank r (must satisfy r < n).
    #[arg(long)]
    r: usize,
    /// Change pattern: "i,j;i,j" pairs, "diag", or "" for the empty pattern.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pattern: String,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RigidityAction {
    /// Compute Rig(A, r) exactly by pattern enumeration.
    Compute(ComputeArgs),
}

#[derive(Args)]
#[command(group = ArgGroup::new("input").required(true).args(["matrix", "family"]))]
struct ComputeArgs {
    /// Matrix JSON file: {"rows": n, "cols": n, "entries": [["1", "-2/3", ...], ...]}.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Named example family (cross3, cross3-perturbed, crossn,
    /// crossn-perturbed, maxrigid3, maxrigid3-perturbed, primes3,
    /// vandermonde-primes).
    #[arg(long)]
    family: Option<String>,
    /// Size parameter for the crossn families (default 4).
    #[arg(long)]
    n: Option<usize>,
    /// Perturbation parameter for the perturbed families, as rational text
    /// like "1/10".
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    /// Target rank r.
    #[arg(long)]
    rank: usize,
    /// Largest accepted matrix size (the search is exponential beyond 4).
    #[arg(long, default_value_t = 4)]
    max_n: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Skip patterns equivalent under entry-preserving row/column
    /// permutations of the matrix.
    #[arg(long)]
    orbit_reduction: bool,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Matrix size n.
    #[arg(long)]
    n: usize,
    /// Target rank r (must satisfy r < n).
    #[arg(long)]
    r: usize,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only checks whose id contains this substring.
    #[arg(long)]
    only: Option<String>,
    /// Seed for every randomized suite (fixed seed => identical report).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Show per-check wall-clock runtimes.
    #[arg(long)]
    timings: bool,
    /// Write the machine-readable JSON report to this file.
    #[arg(long, value_name = "FILE")]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match caps_from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.command {
        Command::Ideal { action } => match action {
            IdealAction::Gen(args) => cmd_ideal_gen(&args, caps),
            IdealAction::Eliminate(args) => cmd_ideal_eliminate(&args, caps),
        },
        Command::Rigidity { action } => match action {
            RigidityAction::Compute(args) => cmd_rigidity_compute(&args, caps),
        },
        Command::Bounds(args) => cmd_bounds(&args),
        Command::VerifyPaper(args) => cmd_verify_paper(&args, caps),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceExceeded(_) | Error::SearchExhausted(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

/// Resource caps from RIGLAB_CAPS ("BASIS,TERMS"), or the defaults.
fn caps_from_env() -> Result<Caps> {
    match env::var("RIGLAB_CAPS") {
        Ok(s) => Caps::parse(&s)
            .map_err(|e| Error::Argument(format!("RIGLAB_CAPS: {e}"))),
        Err(_) => Ok(Caps::default()),
    }
}

/// Run `work` on a rayon pool with `jobs` threads, or on the global pool.
fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(work()),
        Some(0) => Err(Error::Argument("--jobs must be at least 1".into())),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| Error::Argument(format!("cannot build thread pool: {e}")))?;
            Ok(pool.install(work))
        }
    }
}

/// Print the report to stdout and optionally copy it to `--json FILE`.
fn emit_report(report: &Value, json_path: Option<&Path>) -> Result<()> {
    let text = render_json(report);
    println!("{text}");
    write_json_file(report, json_path)
}

fn render_json(report: &Value) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

fn write_json_file(report: &Value, json_path: Option<&Path>) -> Result<()> {
    if let Some(path) = json_path {
        let text = render_json(report);
        fs::write(path, text + "\n")
            .map_err(|e| Error::Argument(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn pattern_json(p: &Pattern) -> Value {
    Value::Array(
        p.iter()
            .map(|(i, j)| Value::Array(vec![json!(i), json!(j)]))
            .collect(),
    )
}

fn ideal_json(i: &Ideal) -> Value {
    let j = i.to_json();
    json!({ "vars": j.vars, "generators": j.generators })
}

fn matrix_json(m: &RationalMatrix) -> Value {
    let j = m.to_json();
    json!({ "rows": j.rows, "cols": j.cols, "entries": j.entries })
}

fn cmd_ideal_gen(args: &IdealArgs, _caps: Caps) -> Result<ExitCode> {
    let pattern = Pattern::parse(&args.pattern, args.n)?;
    let ideal = rigidity_ideal(args.n, args.r, &pattern)?;
    let report = json!({
        "command": "ideal gen",
        "n": args.n,
        "r": args.r,
        "pattern": pattern_json(&pattern),
        "ideal": ideal_json(&ideal),
    });
    emit_report(&report, args.json.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_ideal_eliminate(args: &IdealArgs, caps: Caps) -> Result<ExitCode> {
    let pattern = Pattern::parse(&args.pattern, args.n)?;
    let ideal = rigidity_ideal(args.n, args.r, &pattern)?;
    let direct = elimination_ideal_direct_with(args.n, args.r, &pattern, caps)?;
    let reduced = elimination_ideal_reduced_with(args.n, args.r, &pattern, caps)?;
    // Both routes return reduced lex bases over the same full x-ring, so
    // list equality is basis equality.
    let crosscheck = direct.to_json() == reduced.to_json();
    let report = json!({
        "command": "ideal eliminate",
        "n": args.n,
        "r": args.r,
        "pattern": pattern_json(&pattern),
        "ideal": ideal_json(&ideal),
        "eliminated_direct": ideal_json(&direct),
        "eliminated_reduced": ideal_json(&reduced),
        "crosscheck": crosscheck,
    });
    emit_report(&report, args.json.as_deref())?;
    // A route mismatch would mean an elimination bug; surface it like a
    // failed verification rather than burying it in the report.
    Ok(if crosscheck {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_rigidity_compute(args: &ComputeArgs, caps: Caps) -> Result<ExitCode> {
    let start = std::time::Instant::now();
    let (matrix, family_fields) = load_matrix(args)?;
    let options = RigOptions {
        max_n: args.max_n,
        caps,
        orbit_reduction: args.orbit_reduction,
    };
    let result = with_pool(args.jobs, || rig_exact_with(&matrix, args.rank, &options))??;
    let changes = witness_changes(&matrix, args.rank, &result.witness_pattern)?;
    let mut report = json!({
        "command": "rigidity compute",
        "matrix": matrix_json(&matrix),
        "input_rank": bareiss_rank(&matrix),
        "n": result.n,
        "rank": result.r,
        "value": result.value,
        "witness_pattern": pattern_json(&result.witness_pattern),
        "ruled_out": result.ruled_out,
        "witness_changes": changes.as_ref().map(matrix_json).unwrap_or(Value::Null),
        "orbit_reduction": args.orbit_reduction,
    });
    let map = report.as_object_mut().expect("report is an object");
    for (k, v) in family_fields {
        map.insert(k.to_string(), v);
    }
    if args.timings {
        map.insert("runtime_ms".into(), json!(start.elapsed().as_millis() as u64));
    }
    emit_report(&report, args.json.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

/// Matrix from `--matrix FILE` or `--family NAME`, plus family report fields.
fn load_matrix(args: &ComputeArgs) -> Result<(RationalMatrix, Vec<(&'static str, Value)>)> {
    if let Some(path) = &args.matrix {
        if args.n.is_some() || args.delta.is_some() {
            return Err(Error::Argument(
                "--n and --delta apply only to --family".into(),
            ));
        }
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))?;
        let parsed: MatrixJson = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        return Ok((RationalMatrix::from_json(&parsed)?, Vec::new()));
    }
    let name = args.family.as_deref().expect("clap enforces the input group");
    let kind = FamilyKind::parse(name)?;
    let delta = args.delta.as_deref().map(parse_rational).transpose()?;
    let instance = family_instance(kind, args.n, delta)?;
    let documented = match instance.documented {
        DocumentedRigidity::Exact(v) => format!("exact {v}"),
        DocumentedRigidity::AtMost(v) => format!("at most {v}"),
    };
    let fields = vec![
        ("family", json!(instance.kind.name())),
        ("family_note", json!(instance.note)),
        ("documented_rigidity_at_rank_1", json!(documented)),
    ];
    Ok((instance.matrix, fields))
}

fn cmd_bounds(args: &BoundsArgs) -> Result<ExitCode> {
    let report = bounds_report(args.n, args.r)?;
    let value = json!({
        "command": "bounds",
        "n": report.n,
        "r": report.r,
        "delta_full": {
            "form": report.delta_full.to_string(),
            "value": report.delta_full.value.to_string(),
        },
        "delta_reduced": {
            "form": report.delta_reduced.to_string(),
            "value": report.delta_reduced.value.to_string(),
        },
        "degree_bound_full": report.degree_bound_full.to_string(),
        "degree_bound_reduced": report.degree_bound_reduced.to_string(),
        "full_below_delta": report.full_below_delta,
        "reduced_below_delta": report.reduced_below_delta,
    });
    emit_report(&value, args.json.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_paper(args: &VerifyArgs, caps: Caps) -> Result<ExitCode> {
    let config = VerifyConfig {
        seed: args.seed,
        caps,
        only: args.only.clone(),
    };
    let results = with_pool(args.jobs, || run_all(&config))?;
    if results.is_empty() {
        return Err(Error::Argument(format!(
            "no checks match --only {:?}",
            args.only.as_deref().unwrap_or("")
        )));
    }
    for check in &results {
        print_check(check, args.timings);
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    println!(
        "{} of {} checks passed{}",
        results.len() - failed,
        results.len(),
        if failed == 0 {
            String::new()
        } else {
            format!(", {failed} FAILED")
        }
    );
    if args.json.is_some() {
        let checks: Vec<Value> = results.iter().map(|c| check_json(c, args.timings)).collect();
        let report = json!({
            "command": "verify-paper",
            "seed": args.seed,
            "only": args.only,
            "total": results.len(),
            "passed": results.len() - failed,
            "failed": failed,
            "checks": checks,
        });
        write_json_file(&report, args.json.as_deref())?;
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_check(check: &CheckResult, timings: bool) {
    let status = if check.passed { "PASS" } else { "FAIL" };
    let clock = if timings {
        format!("  [{} ms]", check.runtime_ms)
    } else {
        String::new()
    };
    println!("{status} {}{clock}", check.id);
    println!("       {}", check.description);
    println!("       expected: {}", check.expected);
    println!("       actual:   {}", check.actual);
    for note in &check.notes {
        println!("       note: {note}");
    }
}

fn check_json(check: &CheckResult, timings: bool) -> Value {
    let mut v = json!({
        "id": check.id,
        "description": check.description,
        "expected": check.expected,
        "actual": check.actual,
        "passed": check.passed,
        "notes": check.notes,
    });
    if timings {
        v.as_object_mut()
            .expect("check is an object")
            .insert("runtime_ms".into(), json!(check.runtime_ms as u64));
    }
    v
}
