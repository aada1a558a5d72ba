//! Dense statevector simulation of an n-qubit register.
//!
//! A register over n qubits is a normalized vector of 2^n complex amplitudes.
//! Basis index i is the big-endian reading of the bitstring: bit q of i is
//! qubit q, so the leftmost character of a bitstring is the highest qubit.
//! When an auxiliary qubit is attached it becomes qubit n, the new most
//! significant bit; index i < 2^n is then the ancilla-0 branch and i + 2^n
//! the ancilla-1 branch.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default ceiling on register size: 2^24 complex doubles is 256 MB.
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Environment variable overriding [`DEFAULT_MAX_QUBITS`].
pub const MAX_QUBITS_ENV: &str = "DETSEARCH_MAX_QUBITS";

/// Allowed deviation of the squared norm from 1 on inputs and after
/// public operations.
pub const NORM_TOLERANCE: f64 = 1e-9;

const GATE_UNITARITY_TOLERANCE: f64 = 1e-12;

/// Current register-size cap. `DETSEARCH_MAX_QUBITS` overrides the default
/// when it parses to an integer in 1..=40; other values are ignored.
pub fn max_qubits() -> usize {
    match std::env::var(MAX_QUBITS_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if (1..=40).contains(&n) => n,
            _ => DEFAULT_MAX_QUBITS,
        },
        Err(_) => DEFAULT_MAX_QUBITS,
    }
}

/// Big-endian bitstring for a basis index, zero-padded to `width` qubits.
pub fn index_to_bitstring(index: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parse a big-endian bitstring into a basis index.
pub fn bitstring_to_index(bits: &str) -> Result<usize> {
    if bits.is_empty() || bits.len() > usize::BITS as usize - 1 {
        return Err(Error::InvalidBitstring {
            input: bits.to_string(),
        });
    }
    let mut index = 0usize;
    for c in bits.chars() {
        index <<= 1;
        match c {
            '0' => {}
            '1' => index |= 1,
            _ => {
                return Err(Error::InvalidBitstring {
                    input: bits.to_string(),
                })
            }
        }
    }
    Ok(index)
}

/// A 2x2 unitary acting on one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitGate {
    matrix: [[Complex64; 2]; 2],
}

impl SingleQubitGate {
    /// Build a gate from its matrix, rejecting non-unitary input
    /// (U·U† must equal I within 1e-12 entrywise).
    pub fn new(matrix: [[Complex64; 2]; 2]) -> Result<Self> {
        let [[a, b], [c, d]] = matrix;
        // rows of U times conjugated rows of U = U·U†
        let entries = [
            a * a.conj() + b * b.conj() - 1.0,
            a * c.conj() + b * d.conj(),
            c * a.conj() + d * b.conj(),
            c * c.conj() + d * d.conj() - 1.0,
        ];
        if entries.iter().any(|e| e.norm() > GATE_UNITARITY_TOLERANCE) {
            return Err(Error::NonUnitaryGate {
                tolerance: GATE_UNITARITY_TOLERANCE,
            });
        }
        Ok(Self { matrix })
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            matrix: [[h, h], [h, -h]],
        }
    }

    /// Rotation about the y axis: maps |0⟩ to cos(phi/2)|0⟩ + sin(phi/2)|1⟩.
    pub fn ry(phi: f64) -> Self {
        let c = Complex64::new((phi / 2.0).cos(), 0.0);
        let s = Complex64::new((phi / 2.0).sin(), 0.0);
        Self {
            matrix: [[c, -s], [s, c]],
        }
    }

    pub fn matrix(&self) -> &[[Complex64; 2]; 2] {
        &self.matrix
    }
}

/// Diagonal ±1 operator stored as the set of basis indices whose amplitude
/// is negated. Applying it twice restores the input bit-exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalPhaseOperator {
    num_qubits: usize,
    flipped: BTreeSet<usize>,
}

impl DiagonalPhaseOperator {
    pub fn new(num_qubits: usize, flipped: BTreeSet<usize>) -> Result<Self> {
        let dimension = checked_dimension(num_qubits)?;
        if let Some(&index) = flipped.iter().next_back() {
            if index >= dimension {
                return Err(Error::BasisIndexOutOfRange { index, dimension });
            }
        }
        Ok(Self {
            num_qubits,
            flipped,
        })
    }

    pub fn identity(num_qubits: usize) -> Result<Self> {
        Self::new(num_qubits, BTreeSet::new())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn flipped(&self) -> &BTreeSet<usize> {
        &self.flipped
    }
}

fn checked_dimension(num_qubits: usize) -> Result<usize> {
    if num_qubits == 0 || num_qubits >= usize::BITS as usize - 1 {
        return Err(Error::QubitCountOutOfRange {
            requested: num_qubits,
            max: max_qubits(),
        });
    }
    Ok(1usize << num_qubits)
}

/// Normalized complex amplitude vector over n qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Uniform superposition of all 2^n basis states; every amplitude is
    /// the real value 2^(-n/2).
    pub fn uniform(num_qubits: usize) -> Result<Self> {
        let cap = max_qubits();
        if num_qubits == 0 || num_qubits > cap {
            return Err(Error::QubitCountOutOfRange {
                requested: num_qubits,
                max: cap,
            });
        }
        let dimension = 1usize << num_qubits;
        let amp = Complex64::new(1.0 / (dimension as f64).sqrt(), 0.0);
        Ok(Self {
            num_qubits,
            amplitudes: vec![amp; dimension],
        })
    }

    /// Build a state from explicit amplitudes. The length must be a power of
    /// two >= 2 and the squared norm must be within 1e-9 of 1.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidAmplitudeCount { len });
        }
        let state = Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                norm_sqr,
                tolerance: NORM_TOLERANCE,
            });
        }
        Ok(state)
    }

    /// Computational basis state |index⟩.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dimension = checked_dimension(num_qubits)?;
        if index >= dimension {
            return Err(Error::BasisIndexOutOfRange { index, dimension });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dimension];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// |amplitude|^2 for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Apply a single-qubit gate on the indexed qubit.
    pub fn apply_single_qubit(&mut self, gate: &SingleQubitGate, qubit: usize) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitIndexOutOfRange {
                index: qubit,
                num_qubits: self.num_qubits,
            });
        }
        let [[m00, m01], [m10, m11]] = *gate.matrix();
        let stride = 1usize << qubit;
        let low_mask = stride - 1;
        // Enumerate indices with the target bit clear; its partner differs
        // only in that bit.
        for pair in 0..self.amplitudes.len() / 2 {
            let i0 = (pair >> qubit << (qubit + 1)) | (pair & low_mask);
            let i1 = i0 | stride;
            let a0 = self.amplitudes[i0];
            let a1 = self.amplitudes[i1];
            self.amplitudes[i0] = m00 * a0 + m01 * a1;
            self.amplitudes[i1] = m10 * a0 + m11 * a1;
        }
        Ok(())
    }

    /// Negate the amplitudes at the operator's flipped indices; all other
    /// amplitudes are untouched bit-exactly.
    pub fn apply_diagonal(&mut self, op: &DiagonalPhaseOperator) -> Result<()> {
        if op.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: 1usize << op.num_qubits(),
            });
        }
        for &index in op.flipped() {
            self.amplitudes[index] = -self.amplitudes[index];
        }
        Ok(())
    }

    /// Replace the state with (2|axis⟩⟨axis| − I)·state. The axis must be
    /// normalized and of equal dimension.
    pub fn reflect_about(&mut self, axis: &StateVector) -> Result<()> {
        if axis.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: axis.dimension(),
            });
        }
        let axis_norm_sqr = axis.norm_sqr();
        if (axis_norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                norm_sqr: axis_norm_sqr,
                tolerance: NORM_TOLERANCE,
            });
        }
        let overlap: Complex64 = axis
            .amplitudes
            .iter()
            .zip(&self.amplitudes)
            .map(|(a, s)| a.conj() * s)
            .sum();
        let twice = 2.0 * overlap;
        for (s, a) in self.amplitudes.iter_mut().zip(&axis.amplitudes) {
            *s = twice * a - *s;
        }
        Ok(())
    }

    /// Total probability of the given basis indices.
    pub fn probability_mass(&self, indices: &BTreeSet<usize>) -> Result<f64> {
        if let Some(&index) = indices.iter().next_back() {
            if index >= self.dimension() {
                return Err(Error::BasisIndexOutOfRange {
                    index,
                    dimension: self.dimension(),
                });
            }
        }
        Ok(indices
            .iter()
            .map(|&i| self.amplitudes[i].norm_sqr())
            .sum())
    }

    /// Measure a subset of qubits in the computational basis.
    ///
    /// The outcome is drawn from the subset's marginal distribution with a
    /// generator seeded by `rng_seed`; the state collapses onto the outcome
    /// and is renormalized. The returned bitstring is big-endian over the
    /// measured qubits (highest qubit first).
    pub fn measure_subset(&mut self, qubits: &BTreeSet<usize>, rng_seed: u64) -> Result<String> {
        if qubits.is_empty() {
            return Err(Error::EmptyQubitSubset);
        }
        if let Some(&q) = qubits.iter().next_back() {
            if q >= self.num_qubits {
                return Err(Error::QubitIndexOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        // Drawing a full basis index from |amp|^2 and reading off the subset
        // bits realizes exactly the subset's marginal distribution.
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let draw: f64 = rng.gen::<f64>() * self.norm_sqr();
        let mut cumulative = 0.0;
        let mut sampled = None;
        let mut last_occupied = 0;
        for (i, amp) in self.amplitudes.iter().enumerate() {
            let weight = amp.norm_sqr();
            if weight > 0.0 {
                last_occupied = i;
            }
            cumulative += weight;
            if draw < cumulative {
                sampled = Some(i);
                break;
            }
        }
        let sampled = sampled.unwrap_or(last_occupied);

        let mask: usize = qubits.iter().fold(0, |m, &q| m | (1usize << q));
        let pattern = sampled & mask;
        let mut kept_mass = 0.0;
        for (i, amp) in self.amplitudes.iter_mut().enumerate() {
            if i & mask == pattern {
                kept_mass += amp.norm_sqr();
            } else {
                *amp = Complex64::new(0.0, 0.0);
            }
        }
        let scale = 1.0 / kept_mass.sqrt();
        for amp in &mut self.amplitudes {
            *amp *= scale;
        }
        Ok(qubits
            .iter()
            .rev()
            .map(|&q| if sampled >> q & 1 == 1 { '1' } else { '0' })
            .collect())
    }

    /// Attach a single-qubit ancilla as the new most significant qubit,
    /// returning ancilla ⊗ state. Original index i keeps its meaning on the
    /// ancilla-0 branch; the ancilla-1 branch lives at i + 2^n.
    pub fn tensor_with_ancilla(&self, ancilla: &StateVector) -> Result<StateVector> {
        if ancilla.num_qubits != 1 {
            return Err(Error::AncillaNotSingleQubit {
                num_qubits: ancilla.num_qubits,
            });
        }
        let dimension = self.dimension();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 2 * dimension];
        for (i, amp) in self.amplitudes.iter().enumerate() {
            amplitudes[i] = ancilla.amplitudes[0] * amp;
            amplitudes[i + dimension] = ancilla.amplitudes[1] * amp;
        }
        Ok(StateVector {
            num_qubits: self.num_qubits + 1,
            amplitudes,
        })
    }
}
