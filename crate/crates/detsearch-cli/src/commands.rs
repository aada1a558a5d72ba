//! Subcommand implementations. Each builds the full output as bytes; the
//! dispatcher writes them to stdout or the requested file.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use detsearch_core::{
    compute_k, deterministic_search, deterministic_search_traced, grover_search_traced, make_plan,
    max_qubits, multi_target_exact_search, predicted_success, Complex64, RunReport, SearchProblem,
    StateVector,
};
use serde_json::json;

use crate::args::{Cli, Command, Mode, MultiArgs, OutputFormat, PlanArgs, RunArgs, SweepArgs};
use crate::output::{format_float, to_json_bytes};

/// Exit code 2 for bad input, 3 for a violated internal guarantee.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Internal(message) => write!(f, "internal invariant violated: {message}"),
        }
    }
}

impl From<detsearch_core::Error> for CliError {
    fn from(err: detsearch_core::Error) -> Self {
        if err.is_internal_invariant() {
            CliError::Internal(err.to_string())
        } else {
            CliError::Usage(err.to_string())
        }
    }
}

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    let (bytes, output) = match cli.command {
        Command::Plan(args) => {
            let output = args.output.clone();
            (cmd_plan(&args)?, output)
        }
        Command::Run(args) => {
            let output = args.output.clone();
            (cmd_run(&args)?, output)
        }
        Command::Sweep(args) => {
            let output = args.output.clone();
            (cmd_sweep(&args)?, output)
        }
        Command::Multi(args) => {
            let output = args.output.clone();
            (cmd_multi(&args)?, output)
        }
    };
    write_output(&bytes, output.as_deref())
}

fn write_output(bytes: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|err| CliError::usage(format!("cannot write {}: {err}", path.display()))),
        None => {
            print!("{bytes}");
            Ok(())
        }
    }
}

fn cmd_plan(args: &PlanArgs) -> Result<String, CliError> {
    let plan = make_plan(args.p, args.tolerance)?;
    let value = serde_json::to_value(plan).expect("plan serializes");
    Ok(to_json_bytes(value))
}

fn cmd_run(args: &RunArgs) -> Result<String, CliError> {
    if args.trace && args.format == OutputFormat::Csv {
        return Err(CliError::usage("--trace requires --format json"));
    }
    let problem = build_problem(args.qubits, &args.targets, args.amplitudes.as_deref())?;
    let report = match args.mode {
        Mode::Standard => {
            let iterations = match args.iterations {
                Some(iterations) => iterations,
                None => nearest_natural_iterations(&problem)?,
            };
            grover_search_traced(&problem, iterations, args.seed, args.trace)?
        }
        Mode::Deterministic => {
            if args.iterations.is_some() {
                return Err(CliError::usage(
                    "--iterations cannot be combined with --mode deterministic; \
                     the plan fixes the iteration count",
                ));
            }
            deterministic_search_traced(&problem, args.seed, args.trace)?
        }
    };
    match args.format {
        OutputFormat::Json => {
            let value = serde_json::to_value(&report).expect("report serializes");
            Ok(to_json_bytes(value))
        }
        OutputFormat::Csv => Ok(distribution_csv(&report)),
    }
}

/// The conventional probabilistic choice: raw count rounded to the nearest
/// natural number, halves rounding up.
fn nearest_natural_iterations(problem: &SearchProblem) -> Result<u64, CliError> {
    let k = compute_k(problem.initial_success_probability()?)?;
    Ok((k + 0.5).floor() as u64)
}

fn distribution_csv(report: &RunReport) -> String {
    let mut csv = String::from("index,probability\n");
    for entry in &report.final_distribution {
        csv.push_str(&format!(
            "{},{}\n",
            entry.index,
            format_float(entry.probability)
        ));
    }
    csv
}

fn cmd_sweep(args: &SweepArgs) -> Result<String, CliError> {
    if !(args.start > 0.0 && args.start < args.end && args.end < 1.0) {
        return Err(CliError::usage(format!(
            "sweep grid must satisfy 0 < start < end < 1, got start={} end={}",
            args.start, args.end
        )));
    }
    if args.points < 2 {
        return Err(CliError::usage("sweep needs at least 2 grid points"));
    }
    let mut rows = Vec::with_capacity(args.points);
    for i in 0..args.points {
        let p = args.start + i as f64 * (args.end - args.start) / (args.points - 1) as f64;
        let k = compute_k(p)?;
        let plan = make_plan(p, detsearch_core::DEFAULT_NATURAL_TOLERANCE)?;
        let standard_success = predicted_success(p, (k + 0.5).floor() as u64)?;
        let problem =
            SearchProblem::with_initial_state(BTreeSet::from([0]), synthesized_state(p)?)?;
        let deterministic_success = deterministic_search(&problem, 0)?.success_probability;
        rows.push((p, k, plan.k_prime, standard_success, deterministic_success));
    }
    match args.format {
        OutputFormat::Csv => {
            let mut csv = String::from("p,k,k_prime,standard_success,deterministic_success\n");
            for (p, k, k_prime, standard, deterministic) in rows {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    format_float(p),
                    format_float(k),
                    k_prime,
                    format_float(standard),
                    format_float(deterministic)
                ));
            }
            Ok(csv)
        }
        OutputFormat::Json => {
            let value = json!(rows
                .iter()
                .map(|(p, k, k_prime, standard, deterministic)| json!({
                    "p": p,
                    "k": k,
                    "k_prime": k_prime,
                    "standard_success": standard,
                    "deterministic_success": deterministic,
                }))
                .collect::<Vec<_>>());
            Ok(to_json_bytes(value))
        }
    }
}

/// Explicit 4-qubit state with exactly mass `p` on basis index 0, used to
/// realize arbitrary grid probabilities.
fn synthesized_state(p: f64) -> Result<StateVector, CliError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(CliError::usage(format!(
            "grid point {p} outside the open interval (0, 1)"
        )));
    }
    let rest = ((1.0 - p) / 15.0).sqrt();
    let mut amplitudes = vec![Complex64::new(rest, 0.0); 16];
    amplitudes[0] = Complex64::new(p.sqrt(), 0.0);
    Ok(StateVector::from_amplitudes(amplitudes)?)
}

fn cmd_multi(args: &MultiArgs) -> Result<String, CliError> {
    let problem = build_problem(args.qubits, &args.targets, None)?;
    let trace = multi_target_exact_search(&problem, args.seed)?;
    let value = serde_json::to_value(&trace).expect("trace serializes");
    Ok(to_json_bytes(value))
}

fn build_problem(
    qubits: usize,
    target_tokens: &[String],
    amplitudes: Option<&Path>,
) -> Result<SearchProblem, CliError> {
    let cap = max_qubits();
    if qubits == 0 || qubits > cap {
        return Err(CliError::usage(format!(
            "--qubits {qubits} outside supported range 1..={cap} \
             (override the cap with {})",
            detsearch_core::MAX_QUBITS_ENV
        )));
    }
    let targets = parse_targets(target_tokens, qubits)?;
    match amplitudes {
        Some(path) => {
            let state = load_amplitudes(path)?;
            if state.num_qubits() != qubits {
                return Err(CliError::usage(format!(
                    "amplitude file describes {} qubits but --qubits is {qubits}",
                    state.num_qubits()
                )));
            }
            Ok(SearchProblem::with_initial_state(targets, state)?)
        }
        None => Ok(SearchProblem::uniform(qubits, targets)?),
    }
}

/// A token of only 0/1 characters with length == qubits is a big-endian
/// bitstring; anything else must parse as a decimal basis index.
fn parse_targets(tokens: &[String], qubits: usize) -> Result<BTreeSet<usize>, CliError> {
    let dimension = 1usize << qubits;
    let mut targets = BTreeSet::new();
    for token in tokens {
        let token = token.trim();
        let index = if token.len() == qubits && token.chars().all(|c| c == '0' || c == '1') {
            detsearch_core::bitstring_to_index(token)?
        } else {
            token.parse::<usize>().map_err(|_| {
                CliError::usage(format!(
                    "target '{token}' is neither a {qubits}-bit bitstring nor a decimal index"
                ))
            })?
        };
        if index >= dimension {
            return Err(CliError::usage(format!(
                "target '{token}' (index {index}) out of range for {qubits} qubits"
            )));
        }
        if !targets.insert(index) {
            return Err(CliError::usage(format!("duplicate target '{token}'")));
        }
    }
    Ok(targets)
}

/// Amplitude files are a JSON array of [re, im] pairs whose length is a
/// power of two; the squared norm must be within 1e-9 of 1.
fn load_amplitudes(path: &Path) -> Result<StateVector, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|err| CliError::usage(format!("cannot read {}: {err}", path.display())))?;
    let pairs: Vec<[f64; 2]> = serde_json::from_str(&raw).map_err(|err| {
        CliError::usage(format!(
            "{} is not a JSON array of [re, im] pairs: {err}",
            path.display()
        ))
    })?;
    let amplitudes = pairs
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect();
    Ok(StateVector::from_amplitudes(amplitudes)?)
}
