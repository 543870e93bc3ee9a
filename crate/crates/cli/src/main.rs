//! `rbmod` — exact verification, classification, and structure analysis of
//! finite-dimensional module pairs `(A, B)` over the weight-one operator
//! families, from the command line.
//!
//! Every subcommand is a thin adapter over `rbmod-core`: inputs are JSON
//! (inline or by path) with rationals as exact strings, reports are pretty
//! JSON on standard output or `--output`. Exit codes: 0 success/true,
//! 1 checked-and-false, 2 input error, 3 undecidable over the rationals
//! (irrational spectrum or inconclusive verdict).

use clap::{Parser, Subcommand};
use rbmod_core::error::Error;
use rbmod_core::exec::ordered_map;
use rbmod_core::matrix::span_equal;
use rbmod_core::matsolve::{
    classify_kx, oracle_full_kernel, solution_space_xkx, solve_block, verify_equation,
    ClassifyVariant,
};
use rbmod_core::rational;
use rbmod_core::rbops::{
    verify_module_axiom, verify_rb_identity, Flavor, ModulePair, RbOperator, DEFAULT_TRUNCATION,
};
use rbmod_core::structure::catalog;
use rbmod_core::wire::{
    matrix_from_rows, AnalysisReport, OperatorSpec, PairSpec, SolutionSpaceDto,
};
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "rbmod",
    version,
    about = "Exact solver and verifier for operator module pairs (A, B)",
    long_about = "Classifies, constructs, and verifies finite-dimensional module pairs \
over the weight-one monomial operator families, with exact rational arithmetic \
throughout. Matrices travel as JSON arrays of rational strings, e.g. \
[[\"-1\",\"1\"],[\"0\",\"-1\"]]."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Truncation order for operator checks (falls back to RBMOD_TRUNCATION,
    /// then 12).
    #[arg(long, global = true)]
    truncation: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining equation and the module axiom for a pair (A, B).
    Verify {
        /// Module flavor: kxp1..kxp4 or xkx (overrides the input's field).
        #[arg(long)]
        flavor: Option<String>,
        /// Pair JSON {"a": [[..]], "b": [[..]]}, inline or a file path.
        #[arg(long)]
        input: String,
    },
    /// Compute the full solution space of A-matrices for a given B.
    Classify {
        /// Module flavor: kxp1..kxp4 or xkx.
        #[arg(long)]
        flavor: Option<String>,
        /// Triangular classification variant (i14 or i23) instead of a flavor.
        #[arg(long)]
        variant: Option<String>,
        /// Matrix JSON for B, inline or a file path.
        #[arg(long)]
        input: String,
    },
    /// Solve one Jordan block pair X J_t(b2) = -J_s(b1) X J_t(b2).
    SolveBlock {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Eigenvalue of the left block (rational literal).
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        /// Eigenvalue of the right block (rational literal).
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
    },
    /// Full structure report: validity, submodules, indecomposability.
    Analyze {
        #[arg(long)]
        flavor: Option<String>,
        /// Pair JSON {"a": [[..]], "b": [[..]]}, inline or a file path.
        #[arg(long)]
        input: String,
    },
    /// List the small module families with verified representatives.
    Catalog {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        flavor: String,
    },
    /// Compare the closed-form solution space against the vectorization
    /// kernel oracle for the same B.
    OracleCompare {
        #[arg(long)]
        flavor: String,
        /// Matrix JSON for B, inline or a file path.
        #[arg(long)]
        input: String,
    },
    /// Verify the defining operator identity degree-by-degree.
    RbCheck {
        /// Operator family: P1, P2, P3, P4, or XKx.
        #[arg(long)]
        family: Option<String>,
        /// Weight (rational literal), default 1.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
        /// Family parameter b (P1 only).
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Operator spec JSON instead of flags, inline or a file path.
        #[arg(long)]
        input: Option<String>,
    },
    /// Run a JSON array of jobs; reports are ordered by input index and the
    /// exit code is the worst job's.
    Batch {
        /// Job array JSON, inline or a file path.
        #[arg(long)]
        input: String,
    },
}

/// One job of a batch run; single subcommands are routed through the same
/// shape so behavior cannot drift between modes.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobSpec {
    command: String,
    #[serde(default)]
    input: Option<Value>,
    #[serde(default)]
    input_path: Option<String>,
    #[serde(default)]
    flavor: Option<String>,
    #[serde(default)]
    variant: Option<String>,
    #[serde(default)]
    family: Option<String>,
    #[serde(default)]
    weight: Option<String>,
    #[serde(default)]
    b: Option<String>,
    #[serde(default)]
    truncation: Option<usize>,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    s: Option<usize>,
    #[serde(default)]
    t: Option<usize>,
    #[serde(default)]
    b1: Option<String>,
    #[serde(default)]
    b2: Option<String>,
    #[serde(default)]
    output_path: Option<String>,
}

fn exit_for_error(e: &Error) -> u8 {
    match e {
        Error::IrrationalSpectrum { .. } => 3,
        Error::NotAModule | Error::NotQuasiIdempotent => 1,
        _ => 2,
    }
}

/// Resolves `--input`: inline JSON if it looks like a JSON value, otherwise
/// a file path.
fn load_input(raw: &str) -> Result<Value, Error> {
    let trimmed = raw.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        raw.to_string()
    } else {
        std::fs::read_to_string(raw)
            .map_err(|e| Error::Parse(format!("cannot read input {raw:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("malformed JSON input: {e}")))
}

fn job_input(job: &JobSpec) -> Result<Value, Error> {
    match (&job.input, &job.input_path) {
        (Some(v), _) => Ok(v.clone()),
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Parse(format!("cannot read input {p:?}: {e}")))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("malformed JSON input: {e}")))
        }
        (None, None) => Err(Error::Parse("job needs input or input_path".into())),
    }
}

fn matrix_input(job: &JobSpec) -> Result<rbmod_core::Matrix, Error> {
    let value = job_input(job)?;
    let rows: Vec<Vec<String>> = serde_json::from_value(value)
        .map_err(|e| Error::Parse(format!("expected an array of string rows: {e}")))?;
    matrix_from_rows(&rows)
}

/// Pair input: `{"a": rows, "b": rows}` with the flavor from the job (or
/// a `"flavor"` field inside the JSON as fallback).
fn pair_input(job: &JobSpec) -> Result<ModulePair, Error> {
    #[derive(Deserialize)]
    struct RawPair {
        #[serde(default)]
        flavor: Option<String>,
        a: Vec<Vec<String>>,
        b: Vec<Vec<String>>,
    }
    let value = job_input(job)?;
    let raw: RawPair = serde_json::from_value(value)
        .map_err(|e| Error::Parse(format!("expected a pair object with a and b: {e}")))?;
    let name = job
        .flavor
        .clone()
        .or(raw.flavor)
        .ok_or_else(|| Error::Parse("no flavor given (flag or input field)".into()))?;
    PairSpec {
        flavor: name,
        a: raw.a,
        b: raw.b,
    }
    .to_pair()
}

fn require(field: Option<usize>, name: &str) -> Result<usize, Error> {
    field.ok_or_else(|| Error::Parse(format!("missing field {name}")))
}

fn require_str<'j>(field: &'j Option<String>, name: &str) -> Result<&'j str, Error> {
    field
        .as_deref()
        .ok_or_else(|| Error::Parse(format!("missing field {name}")))
}

/// Operator matching a flavor at weight one, for axiom checks. The P1
/// parameter is immaterial to the axiom, so any legal value serves.
fn operator_for(flavor: Flavor, truncation: usize) -> Result<RbOperator, Error> {
    let family = flavor.family();
    let b = family.needs_b().then(|| rational::int(1));
    RbOperator::new(family, rational::int(1), b, truncation)
}

fn run_verify(job: &JobSpec, truncation: usize) -> Result<(Value, u8), Error> {
    let mp = pair_input(job)?;
    let valid = verify_equation(&mp);
    let op = operator_for(mp.flavor(), truncation)?;
    let axiom = verify_module_axiom(&op, &mp)?;
    let report = json!({
        "flavor": mp.flavor().name(),
        "valid": valid,
        "axiom_holds": axiom.holds,
        "first_failure": axiom.first_failure,
        "agreement": valid == axiom.holds,
    });
    Ok((report, if valid { 0 } else { 1 }))
}

fn run_classify(job: &JobSpec) -> Result<(Value, u8), Error> {
    let b = matrix_input(job)?;
    let space = match (&job.variant, &job.flavor) {
        (Some(v), _) => classify_kx(&b, ClassifyVariant::from_name(v)?)?,
        (None, Some(f)) => match Flavor::from_name(f)? {
            Flavor::XKx => solution_space_xkx(&b)?,
            other => classify_kx(
                &b,
                ClassifyVariant::of_flavor(other).expect("quasi-idempotent flavor"),
            )?,
        },
        (None, None) => return Err(Error::Parse("classify needs a flavor or variant".into())),
    };
    let report = serde_json::to_value(SolutionSpaceDto::from_space(&space))
        .expect("report serialization is infallible");
    Ok((report, 0))
}

fn run_solve_block(job: &JobSpec) -> Result<(Value, u8), Error> {
    let s = require(job.s, "s")?;
    let t = require(job.t, "t")?;
    let b1 = rational::parse(require_str(&job.b1, "b1")?)?;
    let b2 = rational::parse(require_str(&job.b2, "b2")?)?;
    let pattern = solve_block(s, t, &b1, &b2)?;
    let report = json!({
        "rows": pattern.rows,
        "cols": pattern.cols,
        "case": pattern.case.label(),
        "free_cells": pattern.free_cells,
        "dim": pattern.dim(),
    });
    Ok((report, 0))
}

fn run_analyze(job: &JobSpec) -> Result<(Value, u8), Error> {
    let mp = pair_input(job)?;
    let report = AnalysisReport::build(&mp)?;
    let exit = if !report.valid {
        1
    } else if report.undecided() {
        3
    } else {
        0
    };
    let value = serde_json::to_value(report).expect("report serialization is infallible");
    Ok((value, exit))
}

fn run_catalog(job: &JobSpec) -> Result<(Value, u8), Error> {
    let n = require(job.n, "n")?;
    let flavor = Flavor::from_name(require_str(&job.flavor, "flavor")?)?;
    let entries = catalog(n, flavor)?;
    let report: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "description": e.description,
                "free_count": e.free_count,
                "module": serde_json::to_value(PairSpec::from_pair(&e.pair))
                    .expect("report serialization is infallible"),
            })
        })
        .collect();
    Ok((Value::Array(report), 0))
}

fn run_oracle_compare(job: &JobSpec) -> Result<(Value, u8), Error> {
    let b = matrix_input(job)?;
    let flavor = Flavor::from_name(require_str(&job.flavor, "flavor")?)?;
    let space = match flavor {
        Flavor::XKx => solution_space_xkx(&b)?,
        other => classify_kx(
            &b,
            ClassifyVariant::of_flavor(other).expect("quasi-idempotent flavor"),
        )?,
    };
    let oracle = oracle_full_kernel(&b, flavor)?;
    let matches = space.dim == oracle.len() && span_equal(&space.basis, &oracle);
    let report = json!({
        "flavor": flavor.name(),
        "dim": space.dim,
        "oracle_dim": oracle.len(),
        "spans_match": matches,
    });
    Ok((report, if matches { 0 } else { 1 }))
}

fn run_rb_check(job: &JobSpec, truncation: usize) -> Result<(Value, u8), Error> {
    let op = if job.input.is_some() || job.input_path.is_some() {
        let value = job_input(job)?;
        let spec: OperatorSpec = serde_json::from_value(value)
            .map_err(|e| Error::Parse(format!("expected an operator spec: {e}")))?;
        spec.to_operator()?
    } else {
        let family_name = require_str(&job.family, "family")?;
        let family = rbmod_core::rbops::OperatorFamily::from_name(family_name)?;
        let weight = match &job.weight {
            Some(w) => rational::parse(w)?,
            None => rational::int(1),
        };
        let b = job.b.as_deref().map(rational::parse).transpose()?;
        RbOperator::new(family, weight, b, job.truncation.unwrap_or(truncation))?
    };
    let report_data = verify_rb_identity(&op);
    let report = json!({
        "family": op.family().name(),
        "weight": rational::display(op.weight_value()),
        "truncation": op.truncation_order(),
        "holds": report_data.holds,
        "first_failure": report_data.first_failure,
        "checked": report_data.checked,
    });
    Ok((report, if report_data.holds { 0 } else { 1 }))
}

/// Runs one job to a `(report, exit code)` pair; errors become reports too,
/// so a batch never aborts halfway.
fn run_job(job: &JobSpec, truncation: usize) -> (Value, u8) {
    let truncation = job.truncation.unwrap_or(truncation);
    let outcome = match job.command.as_str() {
        "verify" => run_verify(job, truncation),
        "classify" => run_classify(job),
        "solve-block" => run_solve_block(job),
        "analyze" => run_analyze(job),
        "catalog" => run_catalog(job),
        "oracle-compare" => run_oracle_compare(job),
        "rb-check" => run_rb_check(job, truncation),
        other => Err(Error::Parse(format!(
            "unknown batch command {other:?} (batch jobs cannot nest)"
        ))),
    };
    match outcome {
        Ok(pair) => pair,
        Err(e) => (json!({ "error": e.to_string() }), exit_for_error(&e)),
    }
}

fn run_batch(raw: &str, truncation: usize) -> Result<(Value, u8), Error> {
    let value = load_input(raw)?;
    let jobs: Vec<JobSpec> = serde_json::from_value(value)
        .map_err(|e| Error::Parse(format!("expected an array of jobs: {e}")))?;
    let results = ordered_map(jobs, |job| {
        let (report, exit) = run_job(&job, truncation);
        (report, exit, job.output_path)
    });
    let mut reports = Vec::with_capacity(results.len());
    let mut worst = 0u8;
    for (index, (report, exit, output_path)) in results.into_iter().enumerate() {
        worst = worst.max(exit);
        let entry = match output_path {
            Some(path) => {
                write_report(&report, Some(PathBuf::from(&path).as_path()))?;
                json!({ "index": index, "exit": exit, "output_path": path })
            }
            None => json!({ "index": index, "exit": exit, "report": report }),
        };
        reports.push(entry);
    }
    Ok((Value::Array(reports), worst))
}

fn write_report(report: &Value, target: Option<&std::path::Path>) -> Result<(), Error> {
    let mut text =
        serde_json::to_string_pretty(report).expect("report serialization is infallible");
    text.push('\n');
    match target {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write output {path:?}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn resolve_truncation(flag: Option<usize>) -> Result<usize, Error> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("RBMOD_TRUNCATION") {
        Ok(raw) => raw
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("RBMOD_TRUNCATION is not a count: {raw:?}"))),
        Err(_) => Ok(DEFAULT_TRUNCATION),
    }
}

/// Translates the parsed command line into the common job shape.
fn job_of(command: &Command) -> Result<JobSpec, Error> {
    let mut job = JobSpec::default();
    match command {
        Command::Verify { flavor, input } => {
            job.command = "verify".into();
            job.flavor = flavor.clone();
            job.input = Some(load_input(input)?);
        }
        Command::Classify {
            flavor,
            variant,
            input,
        } => {
            job.command = "classify".into();
            job.flavor = flavor.clone();
            job.variant = variant.clone();
            job.input = Some(load_input(input)?);
        }
        Command::SolveBlock { s, t, b1, b2 } => {
            job.command = "solve-block".into();
            job.s = Some(*s);
            job.t = Some(*t);
            job.b1 = Some(b1.clone());
            job.b2 = Some(b2.clone());
        }
        Command::Analyze { flavor, input } => {
            job.command = "analyze".into();
            job.flavor = flavor.clone();
            job.input = Some(load_input(input)?);
        }
        Command::Catalog { n, flavor } => {
            job.command = "catalog".into();
            job.n = Some(*n);
            job.flavor = Some(flavor.clone());
        }
        Command::OracleCompare { flavor, input } => {
            job.command = "oracle-compare".into();
            job.flavor = Some(flavor.clone());
            job.input = Some(load_input(input)?);
        }
        Command::RbCheck {
            family,
            weight,
            b,
            input,
        } => {
            job.command = "rb-check".into();
            job.family = family.clone();
            job.weight = weight.clone();
            job.b = b.clone();
            job.input = input.as_deref().map(load_input).transpose()?;
        }
        Command::Batch { .. } => unreachable!("batch is dispatched before job_of"),
    }
    Ok(job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let truncation = match resolve_truncation(cli.truncation) {
        Ok(n) => n,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let outcome = match &cli.command {
        Command::Batch { input } => run_batch(input, truncation),
        other => job_of(other).map(|job| run_job(&job, truncation)),
    };

    let (report, exit) = match outcome {
        Ok(pair) => pair,
        Err(e) => (json!({ "error": e.to_string() }), exit_for_error(&e)),
    };
    if let Err(e) = write_report(&report, cli.output.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(exit)
}
