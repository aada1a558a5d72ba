//! Independent dense-matrix reference path plus seeded random inputs.
//!
//! Everything here works on plain `Vec` matrices and vectors so the checks
//! do not share code with the statevector kernels they verify.

#![allow(dead_code)]

use std::collections::BTreeSet;

use detsearch_core::{Complex64, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<Complex64>>;

pub fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

pub fn identity(dim: usize) -> Matrix {
    let mut m = vec![vec![zero(); dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = one();
    }
    m
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut m = vec![vec![zero(); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    m[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    m
}

pub fn matvec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut m = vec![vec![zero(); b[0].len()]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            for (j, bkj) in b[k].iter().enumerate() {
                m[i][j] += aik * bkj;
            }
        }
    }
    m
}

/// Embed a 2x2 gate acting on `qubit` into the full 2^n space. Bit q of a
/// basis index is qubit q, so the gate sits at tensor slot n-1-q from the
/// left: I_(2^(n-1-q)) ⊗ U ⊗ I_(2^q).
pub fn embed_single_qubit(gate: &[[Complex64; 2]; 2], qubit: usize, num_qubits: usize) -> Matrix {
    let u: Matrix = vec![
        vec![gate[0][0], gate[0][1]],
        vec![gate[1][0], gate[1][1]],
    ];
    let left = identity(1 << (num_qubits - 1 - qubit));
    let right = identity(1 << qubit);
    kron(&kron(&left, &u), &right)
}

/// Dense ±1 diagonal with −1 at the flipped indices.
pub fn diagonal_matrix(flipped: &BTreeSet<usize>, num_qubits: usize) -> Matrix {
    let mut m = identity(1 << num_qubits);
    for &i in flipped {
        m[i][i] = -one();
    }
    m
}

/// Dense reflection 2|axis⟩⟨axis| − I.
pub fn reflection_matrix(axis: &[Complex64]) -> Matrix {
    let dim = axis.len();
    let mut m = vec![vec![zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            m[i][j] = 2.0 * axis[i] * axis[j].conj();
            if i == j {
                m[i][j] -= 1.0;
            }
        }
    }
    m
}

pub fn hadamard_matrix() -> [[Complex64; 2]; 2] {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn ry_matrix(phi: f64) -> [[Complex64; 2]; 2] {
    let c = Complex64::new((phi / 2.0).cos(), 0.0);
    let s = Complex64::new((phi / 2.0).sin(), 0.0);
    [[c, -s], [s, c]]
}

pub fn max_amplitude_gap(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Seeded random normalized state over n qubits.
pub fn random_state(num_qubits: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let dimension = 1usize << num_qubits;
    let mut amplitudes: Vec<Complex64> = (0..dimension)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for amp in &mut amplitudes {
        *amp /= norm;
    }
    StateVector::from_amplitudes(amplitudes).expect("normalized by construction")
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random non-empty proper subset of the basis indices.
pub fn random_index_set(num_qubits: usize, rng: &mut ChaCha8Rng) -> BTreeSet<usize> {
    let dimension = 1usize << num_qubits;
    let size = rng.gen_range(1..dimension);
    let mut set = BTreeSet::new();
    while set.len() < size {
        set.insert(rng.gen_range(0..dimension));
    }
    set
}
