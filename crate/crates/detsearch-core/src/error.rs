//! Error type shared by the whole crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {requested} outside supported range 1..={max}")]
    QubitCountOutOfRange { requested: usize, max: usize },

    #[error("amplitude array length {len} is not a power of two >= 2")]
    InvalidAmplitudeCount { len: usize },

    #[error("state norm^2 = {norm_sqr} deviates from 1 by more than {tolerance}")]
    NotNormalized { norm_sqr: f64, tolerance: f64 },

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitIndexOutOfRange { index: usize, num_qubits: usize },

    #[error("basis index {index} out of range for dimension {dimension}")]
    BasisIndexOutOfRange { index: usize, dimension: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("measurement requires a non-empty set of qubit indices")]
    EmptyQubitSubset,

    #[error("ancilla register must be a single qubit, got {num_qubits}")]
    AncillaNotSingleQubit { num_qubits: usize },

    #[error("gate matrix is not unitary within {tolerance}")]
    NonUnitaryGate { tolerance: f64 },

    #[error("initial success probability must satisfy 0 < p < 1, got {p}")]
    ProbabilityOutOfRange { p: f64 },

    #[error("natural-number tolerance must be finite, non-negative and < 0.5, got {tolerance}")]
    InvalidTolerance { tolerance: f64 },

    #[error("iteration count for p = {p} exceeds the supported integer range")]
    IterationCountOverflow { p: f64 },

    #[error("target counts must satisfy 1 <= n_targets < n_states, got {n_targets} of {n_states}")]
    InvalidTargetCount { n_states: u64, n_targets: u64 },

    #[error("invalid target set: {reason}")]
    InvalidTargets { reason: String },

    #[error("gate-level diffusion cross-check supports 1..={max} qubits, got {requested}")]
    GateLevelDiffusionRange { requested: usize, max: usize },

    #[error("bitstring '{input}' is not a non-empty string of 0s and 1s")]
    InvalidBitstring { input: String },

    /// A driver that guarantees certainty produced a final state below the
    /// success threshold. This signals a broken invariant, not bad input.
    #[error("deterministic run reached success probability {success}, below threshold 1 - {tolerance}")]
    CertaintyViolated { success: f64, tolerance: f64 },

    /// A deterministic run measured a state outside the (remaining) target set.
    #[error("measured outcome {outcome} is not one of the remaining target states")]
    NonTargetOutcome { outcome: String },
}

impl Error {
    /// True for errors that indicate a violated internal guarantee rather
    /// than invalid input. Front ends report these differently (exit 3).
    pub fn is_internal_invariant(&self) -> bool {
        matches!(
            self,
            Error::CertaintyViolated { .. } | Error::NonTargetOutcome { .. }
        )
    }
}
