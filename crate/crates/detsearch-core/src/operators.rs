//! Search-problem definitions and builders for the circuit components:
//! target oracles, the auxiliary-controlled oracle, the zero-state
//! reflection, diffusion axes and the dynamic re-flip operator used by the
//! multi-target protocol.
//!
//! Oracles are index sets, not matrices: application is O(|flipped|) sign
//! flips on the statevector.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::state::{max_qubits, DiagonalPhaseOperator, SingleQubitGate, StateVector};

/// How the register is prepared before searching.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    /// Uniform superposition of all basis states (Hadamard on every qubit).
    Uniform,
    /// Arbitrary prepared state A|0⟩.
    Explicit(StateVector),
}

/// An n-qubit search instance: target basis states plus initial preparation.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchProblem {
    num_qubits: usize,
    targets: BTreeSet<usize>,
    initial: InitialState,
}

impl SearchProblem {
    pub fn uniform(num_qubits: usize, targets: BTreeSet<usize>) -> Result<Self> {
        let cap = max_qubits();
        if num_qubits == 0 || num_qubits > cap {
            return Err(Error::QubitCountOutOfRange {
                requested: num_qubits,
                max: cap,
            });
        }
        validate_targets(num_qubits, &targets)?;
        Ok(Self {
            num_qubits,
            targets,
            initial: InitialState::Uniform,
        })
    }

    pub fn with_initial_state(targets: BTreeSet<usize>, state: StateVector) -> Result<Self> {
        let num_qubits = state.num_qubits();
        validate_targets(num_qubits, &targets)?;
        let mass: f64 = targets.iter().map(|&t| state.amplitudes()[t].norm_sqr()).sum();
        if mass == 0.0 {
            return Err(Error::InvalidTargets {
                reason: "initial state carries no probability mass on the target set".to_string(),
            });
        }
        Ok(Self {
            num_qubits,
            targets,
            initial: InitialState::Explicit(state),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// N = 2^n.
    pub fn num_states(&self) -> usize {
        1usize << self.num_qubits
    }

    /// M, the number of target states.
    pub fn num_targets(&self) -> usize {
        self.targets.len()
    }

    pub fn targets(&self) -> &BTreeSet<usize> {
        &self.targets
    }

    pub fn initial(&self) -> &InitialState {
        &self.initial
    }

    /// The prepared register A|0⟩.
    pub fn prepared_state(&self) -> Result<StateVector> {
        match &self.initial {
            InitialState::Uniform => StateVector::uniform(self.num_qubits),
            InitialState::Explicit(state) => Ok(state.clone()),
        }
    }

    /// Target mass p of the prepared state.
    pub fn initial_success_probability(&self) -> Result<f64> {
        self.initial_mass_on(&self.targets)
    }

    /// Mass of an index set in the prepared state. Exact counting for the
    /// uniform case so M/N comes out bit-identical across drivers.
    pub fn initial_mass_on(&self, indices: &BTreeSet<usize>) -> Result<f64> {
        if let Some(&index) = indices.iter().next_back() {
            if index >= self.num_states() {
                return Err(Error::BasisIndexOutOfRange {
                    index,
                    dimension: self.num_states(),
                });
            }
        }
        match &self.initial {
            InitialState::Uniform => Ok(indices.len() as f64 / self.num_states() as f64),
            InitialState::Explicit(state) => state.probability_mass(indices),
        }
    }
}

fn validate_targets(num_qubits: usize, targets: &BTreeSet<usize>) -> Result<()> {
    let dimension = 1usize << num_qubits;
    if targets.is_empty() {
        return Err(Error::InvalidTargets {
            reason: "target set must not be empty".to_string(),
        });
    }
    if let Some(&index) = targets.iter().next_back() {
        if index >= dimension {
            return Err(Error::InvalidTargets {
                reason: format!("target index {index} out of range for dimension {dimension}"),
            });
        }
    }
    if targets.len() == dimension {
        return Err(Error::InvalidTargets {
            reason: "target set must not cover every basis state".to_string(),
        });
    }
    Ok(())
}

/// A search problem extended by an auxiliary qubit rotated through `phi`.
/// The new targets are the original targets on the ancilla-0 branch, whose
/// augmented indices coincide with the original ones.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedProblem<'a> {
    base: &'a SearchProblem,
    phi: f64,
    new_targets: BTreeSet<usize>,
}

impl<'a> AugmentedProblem<'a> {
    pub fn new(base: &'a SearchProblem, phi: f64) -> Self {
        Self {
            base,
            phi,
            new_targets: base.targets().clone(),
        }
    }

    pub fn base(&self) -> &SearchProblem {
        self.base
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn new_targets(&self) -> &BTreeSet<usize> {
        &self.new_targets
    }

    pub fn augmented_qubits(&self) -> usize {
        self.base.num_qubits() + 1
    }
}

/// Oracle flipping the sign of every target state.
pub fn build_oracle(problem: &SearchProblem) -> Result<DiagonalPhaseOperator> {
    DiagonalPhaseOperator::new(problem.num_qubits(), problem.targets().clone())
}

/// Oracle on n+1 qubits marking targets only on the ancilla-0 branch.
pub fn build_controlled_oracle(aug: &AugmentedProblem<'_>) -> Result<DiagonalPhaseOperator> {
    DiagonalPhaseOperator::new(aug.augmented_qubits(), aug.new_targets().clone())
}

/// Reflection about |0…0⟩: flips exactly basis index 0.
pub fn build_s0(num_qubits: usize) -> Result<DiagonalPhaseOperator> {
    DiagonalPhaseOperator::new(num_qubits, BTreeSet::from([0]))
}

/// The prepared initial state, used as the axis of the diffusion reflection.
pub fn build_diffusion_axis(problem: &SearchProblem) -> Result<StateVector> {
    problem.prepared_state()
}

/// Diffusion axis for an augmented problem: (R_y(φ)|0⟩) ⊗ A|0⟩.
pub fn build_augmented_diffusion_axis(aug: &AugmentedProblem<'_>) -> Result<StateVector> {
    let base_state = aug.base().prepared_state()?;
    let mut ancilla = StateVector::basis(1, 0)?;
    ancilla.apply_single_qubit(&SingleQubitGate::ry(aug.phi()), 0)?;
    base_state.tensor_with_ancilla(&ancilla)
}

/// Dynamic operator re-flipping already-found targets. Composed after the
/// oracle the two sign flips cancel, so only targets \ found stay marked.
pub fn build_target_inv(
    found: &BTreeSet<usize>,
    num_qubits: usize,
) -> Result<DiagonalPhaseOperator> {
    DiagonalPhaseOperator::new(num_qubits, found.clone())
}

/// Gate-level realization of the uniform diffusion: H on every qubit, the
/// zero-state reflection, H on every qubit. Cross-check path only; equals
/// the negated reflection about the uniform state.
#[derive(Debug, Clone)]
pub struct UniformDiffusionGates {
    num_qubits: usize,
    s0: DiagonalPhaseOperator,
}

/// Largest register for which the gate-level cross-check path is offered.
pub const GATE_LEVEL_MAX_QUBITS: usize = 12;

pub fn uniform_diffusion_gate_level(num_qubits: usize) -> Result<UniformDiffusionGates> {
    if num_qubits == 0 || num_qubits > GATE_LEVEL_MAX_QUBITS {
        return Err(Error::GateLevelDiffusionRange {
            requested: num_qubits,
            max: GATE_LEVEL_MAX_QUBITS,
        });
    }
    Ok(UniformDiffusionGates {
        num_qubits,
        s0: build_s0(num_qubits)?,
    })
}

impl UniformDiffusionGates {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1usize << self.num_qubits,
                actual: state.dimension(),
            });
        }
        let h = SingleQubitGate::hadamard();
        for qubit in 0..self.num_qubits {
            state.apply_single_qubit(&h, qubit)?;
        }
        state.apply_diagonal(&self.s0)?;
        for qubit in 0..self.num_qubits {
            state.apply_single_qubit(&h, qubit)?;
        }
        Ok(())
    }
}
