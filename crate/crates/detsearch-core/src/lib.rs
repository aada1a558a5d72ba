//! Statevector engine and closed-form planner for quantum search with a
//! certainty guarantee.
//!
//! The crate simulates Grover-style search exactly on a dense complex
//! statevector and plans iteration counts in closed form. For any initial
//! success probability 0 < p < 1 the deterministic driver finds a target
//! state with probability 1, spending at most one iteration more than the
//! raw optimum: when the raw count is fractional, an auxiliary qubit rotated
//! through a computed angle dilutes p to the nearest smaller value whose
//! count is a natural number. A multi-target driver repeats the process once
//! per target, masking already-found targets, so M targets are recovered in
//! exactly M executions.
//!
//! Modules:
//! - [`state`]: the register — gates, diagonal phase flips, reflections,
//!   marginals and seeded measurement.
//! - [`planner`]: iteration counts, success probabilities, dilution plans.
//! - [`operators`]: search problems and the oracle/diffusion builders.
//! - [`search`]: end-to-end drivers and their run reports.

pub mod error;
pub mod operators;
pub mod planner;
pub mod search;
pub mod state;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use operators::{
    build_augmented_diffusion_axis, build_controlled_oracle, build_diffusion_axis, build_oracle,
    build_s0, build_target_inv, uniform_diffusion_gate_level, AugmentedProblem, InitialState,
    SearchProblem, UniformDiffusionGates, GATE_LEVEL_MAX_QUBITS,
};
pub use planner::{
    approx_iterations, compute_k, make_plan, no_advantage_check, predicted_success,
    DeterministicPlan, SearchAngles, DEFAULT_NATURAL_TOLERANCE,
};
pub use search::{
    amplitude_amplification, deterministic_search, deterministic_search_traced, grover_search,
    grover_search_traced, multi_target_exact_search, DistributionEntry, MultiTargetExecution,
    MultiTargetTrace, RunReport, SearchMode, SnapshotStage, StateSnapshot, CERTAINTY_TOLERANCE,
};
pub use state::{
    bitstring_to_index, index_to_bitstring, max_qubits, DiagonalPhaseOperator, SingleQubitGate,
    StateVector, DEFAULT_MAX_QUBITS, MAX_QUBITS_ENV, NORM_TOLERANCE,
};
