//! End-to-end search drivers.
//!
//! Every driver prepares the register, repeats oracle-then-diffusion, and
//! reports the final distribution, the target mass and a seeded measurement.
//! The deterministic driver plans its iteration count first and, when the
//! raw count is fractional, attaches the auxiliary qubit so the final target
//! mass is 1; the multi-target driver repeats the deterministic run once per
//! target, re-flipping already-found targets so they drop out.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{
    build_augmented_diffusion_axis, build_controlled_oracle, build_oracle, build_target_inv,
    AugmentedProblem, InitialState, SearchProblem,
};
use crate::planner::{make_plan, DeterministicPlan, DEFAULT_NATURAL_TOLERANCE};
use crate::state::{bitstring_to_index, index_to_bitstring, DiagonalPhaseOperator, StateVector};

/// Tolerance on the certainty guarantee: a deterministic run must end with
/// target mass at least 1 − this value.
pub const CERTAINTY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Standard,
    Deterministic,
    MultiTarget,
}

/// One (basis index, probability) row of a final distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionEntry {
    pub index: u64,
    pub probability: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SnapshotStage {
    AfterInitialization,
    AfterOracle,
    AfterDiffusion,
}

/// Signed amplitudes captured mid-run, as (re, im) pairs in basis order.
/// Negative real parts after the oracle exhibit the phase inversion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateSnapshot {
    pub stage: SnapshotStage,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iteration: Option<u64>,
    pub amplitudes: Vec<[f64; 2]>,
}

/// Result of a single search run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub mode: SearchMode,
    pub iterations_used: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<DeterministicPlan>,
    /// Probability per basis index of the full register (including the
    /// auxiliary qubit when one was attached), sorted by index.
    pub final_distribution: Vec<DistributionEntry>,
    /// Mass on the data-qubit target set, marginalized over the auxiliary.
    pub success_probability: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured_outcome: Option<String>,
    pub rng_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snapshots: Option<Vec<StateSnapshot>>,
}

/// One execution of the multi-target protocol.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiTargetExecution {
    pub found_target: String,
    pub report: RunReport,
}

/// Full trace of the multi-target protocol: exactly M executions whose
/// found targets are distinct and cover the original target set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiTargetTrace {
    pub executions: Vec<MultiTargetExecution>,
    /// Remaining target bitstrings before each execution.
    pub remaining_before_each: Vec<Vec<String>>,
    pub rng_seed: u64,
}

struct SnapshotRecorder {
    enabled: bool,
    snapshots: Vec<StateSnapshot>,
}

impl SnapshotRecorder {
    fn new(enabled: bool) -> Self {
        Self {
            enabled,
            snapshots: Vec::new(),
        }
    }

    fn record(&mut self, stage: SnapshotStage, iteration: Option<u64>, state: &StateVector) {
        if self.enabled {
            self.snapshots.push(StateSnapshot {
                stage,
                iteration,
                amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
            });
        }
    }

    fn into_option(self) -> Option<Vec<StateSnapshot>> {
        self.enabled.then_some(self.snapshots)
    }
}

fn ensure_searchable(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::ProbabilityOutOfRange { p });
    }
    Ok(p)
}

fn run_iterations(
    state: &mut StateVector,
    axis: &StateVector,
    oracle: &DiagonalPhaseOperator,
    target_inv: Option<&DiagonalPhaseOperator>,
    iterations: u64,
    recorder: &mut SnapshotRecorder,
) -> Result<()> {
    recorder.record(SnapshotStage::AfterInitialization, None, state);
    for iteration in 1..=iterations {
        state.apply_diagonal(oracle)?;
        if let Some(inv) = target_inv {
            state.apply_diagonal(inv)?;
        }
        recorder.record(SnapshotStage::AfterOracle, Some(iteration), state);
        state.reflect_about(axis)?;
        recorder.record(SnapshotStage::AfterDiffusion, Some(iteration), state);
    }
    Ok(())
}

fn distribution(state: &StateVector) -> Vec<DistributionEntry> {
    state
        .probabilities()
        .into_iter()
        .enumerate()
        .map(|(index, probability)| DistributionEntry {
            index: index as u64,
            probability,
        })
        .collect()
}

/// Mass on the data-qubit target set. For an augmented register the
/// ancilla-0 and ancilla-1 branches of each target are summed.
fn data_qubit_target_mass(
    state: &StateVector,
    targets: &BTreeSet<usize>,
    data_qubits: usize,
) -> Result<f64> {
    let mut indices = targets.clone();
    if state.num_qubits() == data_qubits + 1 {
        let offset = 1usize << data_qubits;
        indices.extend(targets.iter().map(|&t| t + offset));
    }
    state.probability_mass(&indices)
}

/// Standard probabilistic search from a uniform start: `iterations` rounds
/// of oracle and diffusion about the prepared state.
pub fn grover_search(problem: &SearchProblem, iterations: u64, seed: u64) -> Result<RunReport> {
    grover_search_traced(problem, iterations, seed, false)
}

/// As [`grover_search`], optionally capturing per-stage amplitude snapshots.
pub fn grover_search_traced(
    problem: &SearchProblem,
    iterations: u64,
    seed: u64,
    trace: bool,
) -> Result<RunReport> {
    ensure_searchable(problem.initial_success_probability()?)?;
    let axis = problem.prepared_state()?;
    let mut state = axis.clone();
    let oracle = build_oracle(problem)?;
    let mut recorder = SnapshotRecorder::new(trace);
    run_iterations(&mut state, &axis, &oracle, None, iterations, &mut recorder)?;

    let success_probability = state.probability_mass(problem.targets())?;
    let final_distribution = distribution(&state);
    let all_qubits: BTreeSet<usize> = (0..problem.num_qubits()).collect();
    let measured_outcome = state.measure_subset(&all_qubits, seed)?;
    Ok(RunReport {
        mode: SearchMode::Standard,
        iterations_used: iterations,
        plan: None,
        final_distribution,
        success_probability,
        measured_outcome: Some(measured_outcome),
        rng_seed: seed,
        snapshots: recorder.into_option(),
    })
}

/// Standard search loop around an explicitly prepared initial state.
pub fn amplitude_amplification(
    problem: &SearchProblem,
    iterations: u64,
    seed: u64,
) -> Result<RunReport> {
    match problem.initial() {
        InitialState::Explicit(_) => grover_search_traced(problem, iterations, seed, false),
        InitialState::Uniform => Err(Error::InvalidTargets {
            reason: "amplitude amplification expects an explicit initial state; \
                     use grover_search for the uniform case"
                .to_string(),
        }),
    }
}

/// Search with a guaranteed target measurement.
///
/// Plans the iteration count from the initial target mass; when the raw
/// count is fractional the auxiliary qubit is attached and rotated so the
/// diluted problem needs exactly ⌊k⌋ + 1 iterations. Only data qubits are
/// measured. Ends with target mass 1 within [`CERTAINTY_TOLERANCE`].
pub fn deterministic_search(problem: &SearchProblem, seed: u64) -> Result<RunReport> {
    deterministic_search_traced(problem, seed, false)
}

/// As [`deterministic_search`], optionally capturing amplitude snapshots.
pub fn deterministic_search_traced(
    problem: &SearchProblem,
    seed: u64,
    trace: bool,
) -> Result<RunReport> {
    let p = ensure_searchable(problem.initial_success_probability()?)?;
    let plan = make_plan(p, DEFAULT_NATURAL_TOLERANCE)?;
    execute_planned(problem, &plan, None, problem.targets(), seed, trace).map(|mut report| {
        report.mode = SearchMode::Deterministic;
        report
    })
}

/// Exact search for every target: one deterministic execution per target,
/// each re-planned on the remaining targets' mass in the original initial
/// state and ignoring already-found targets via the re-flip operator.
pub fn multi_target_exact_search(problem: &SearchProblem, seed: u64) -> Result<MultiTargetTrace> {
    let mut found: BTreeSet<usize> = BTreeSet::new();
    let mut executions = Vec::with_capacity(problem.num_targets());
    let mut remaining_before_each = Vec::with_capacity(problem.num_targets());

    for execution in 0..problem.num_targets() as u64 {
        let remaining: BTreeSet<usize> = problem.targets().difference(&found).copied().collect();
        remaining_before_each.push(
            remaining
                .iter()
                .map(|&t| index_to_bitstring(t, problem.num_qubits()))
                .collect(),
        );

        let p = ensure_searchable(problem.initial_mass_on(&remaining)?)?;
        let plan = make_plan(p, DEFAULT_NATURAL_TOLERANCE)?;
        let exec_seed = seed.wrapping_add(execution);
        let mut report = execute_planned(problem, &plan, Some(&found), &remaining, exec_seed, false)?;
        report.mode = SearchMode::MultiTarget;

        let outcome = report
            .measured_outcome
            .clone()
            .expect("deterministic execution always measures");
        let outcome_index = bitstring_to_index(&outcome)?;
        if !remaining.contains(&outcome_index) {
            return Err(Error::NonTargetOutcome { outcome });
        }
        found.insert(outcome_index);
        executions.push(MultiTargetExecution {
            found_target: outcome,
            report,
        });
    }
    Ok(MultiTargetTrace {
        executions,
        remaining_before_each,
        rng_seed: seed,
    })
}

/// Run one planned, certainty-checked execution. `effective_targets` is the
/// set whose mass must reach 1; `found` adds the re-flip operator after the
/// oracle so those targets drop out of the marked set.
fn execute_planned(
    problem: &SearchProblem,
    plan: &DeterministicPlan,
    found: Option<&BTreeSet<usize>>,
    effective_targets: &BTreeSet<usize>,
    seed: u64,
    trace: bool,
) -> Result<RunReport> {
    let data_qubits = problem.num_qubits();
    let (axis, oracle, register_qubits) = if plan.needs_auxiliary {
        let aug = AugmentedProblem::new(problem, plan.phi);
        (
            build_augmented_diffusion_axis(&aug)?,
            build_controlled_oracle(&aug)?,
            data_qubits + 1,
        )
    } else {
        (problem.prepared_state()?, build_oracle(problem)?, data_qubits)
    };
    let target_inv = found
        .filter(|f| !f.is_empty())
        .map(|f| build_target_inv(f, register_qubits))
        .transpose()?;

    let mut state = axis.clone();
    let mut recorder = SnapshotRecorder::new(trace);
    run_iterations(
        &mut state,
        &axis,
        &oracle,
        target_inv.as_ref(),
        plan.k_prime,
        &mut recorder,
    )?;

    let success_probability = data_qubit_target_mass(&state, effective_targets, data_qubits)?;
    if success_probability < 1.0 - CERTAINTY_TOLERANCE {
        return Err(Error::CertaintyViolated {
            success: success_probability,
            tolerance: CERTAINTY_TOLERANCE,
        });
    }
    let final_distribution = distribution(&state);
    let data_qubit_set: BTreeSet<usize> = (0..data_qubits).collect();
    let measured_outcome = state.measure_subset(&data_qubit_set, seed)?;
    if !effective_targets.contains(&bitstring_to_index(&measured_outcome)?) {
        return Err(Error::NonTargetOutcome {
            outcome: measured_outcome,
        });
    }
    Ok(RunReport {
        mode: SearchMode::Deterministic,
        iterations_used: plan.k_prime,
        plan: Some(*plan),
        final_distribution,
        success_probability,
        measured_outcome: Some(measured_outcome),
        rng_seed: seed,
        snapshots: recorder.into_option(),
    })
}
