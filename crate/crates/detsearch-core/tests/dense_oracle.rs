//! Cross-checks of the statevector kernels against explicit dense-matrix
//! products over the full 2^n space.

mod common;

use std::collections::BTreeSet;

use common::*;
use detsearch_core::{
    uniform_diffusion_gate_level, AugmentedProblem, Complex64, DiagonalPhaseOperator,
    SearchProblem, SingleQubitGate, StateVector,
};
use rand::Rng;

const PER_AMPLITUDE_TOLERANCE: f64 = 1e-10;

/// One randomly chosen operator, applied both ways.
enum Op {
    Gate([[Complex64; 2]; 2], usize),
    Diagonal(BTreeSet<usize>),
    Reflect(StateVector),
}

impl Op {
    fn random(num_qubits: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Self {
        match rng.gen_range(0..4) {
            0 => Op::Gate(hadamard_matrix(), rng.gen_range(0..num_qubits)),
            1 => Op::Gate(
                ry_matrix(rng.gen_range(0.0..std::f64::consts::PI)),
                rng.gen_range(0..num_qubits),
            ),
            2 => Op::Diagonal(random_index_set(num_qubits, rng)),
            _ => Op::Reflect(random_state(num_qubits, rng)),
        }
    }

    fn apply_simulated(&self, state: &mut StateVector) {
        match self {
            Op::Gate(matrix, qubit) => state
                .apply_single_qubit(&SingleQubitGate::new(*matrix).unwrap(), *qubit)
                .unwrap(),
            Op::Diagonal(flipped) => state
                .apply_diagonal(
                    &DiagonalPhaseOperator::new(state.num_qubits(), flipped.clone()).unwrap(),
                )
                .unwrap(),
            Op::Reflect(axis) => state.reflect_about(axis).unwrap(),
        }
    }

    fn apply_dense(&self, vector: &[Complex64], num_qubits: usize) -> Vec<Complex64> {
        let matrix = match self {
            Op::Gate(gate, qubit) => embed_single_qubit(gate, *qubit, num_qubits),
            Op::Diagonal(flipped) => diagonal_matrix(flipped, num_qubits),
            Op::Reflect(axis) => reflection_matrix(axis.amplitudes()),
        };
        matvec(&matrix, vector)
    }
}

#[test]
fn random_operator_sequences_match_dense_products() {
    let mut rng = seeded_rng(0xD15EA5E);
    for case in 0..120 {
        let num_qubits = rng.gen_range(1..=4);
        let start = random_state(num_qubits, &mut rng);
        let mut simulated = start.clone();
        let mut dense: Vec<Complex64> = start.amplitudes().to_vec();
        let ops = rng.gen_range(1..=6);
        for _ in 0..ops {
            let op = Op::random(num_qubits, &mut rng);
            op.apply_simulated(&mut simulated);
            dense = op.apply_dense(&dense, num_qubits);
        }
        let gap = max_amplitude_gap(simulated.amplitudes(), &dense);
        assert!(
            gap < PER_AMPLITUDE_TOLERANCE,
            "case {case}: amplitude gap {gap}"
        );
        assert!((simulated.norm_sqr() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn hadamard_conjugated_zero_reflection_is_the_negated_uniform_reflection() {
    // H⊗3 · S0 · H⊗3 == −(2|u⟩⟨u| − I), compared as dense 8x8 matrices
    let n = 3;
    let h = embed_all_hadamards(n);
    let s0 = diagonal_matrix(&BTreeSet::from([0]), n);
    let composed = matmul(&h, &matmul(&s0, &h));

    let uniform = StateVector::uniform(n).unwrap();
    let reflection = reflection_matrix(uniform.amplitudes());
    for i in 0..1 << n {
        for j in 0..1 << n {
            assert!(
                (composed[i][j] + reflection[i][j]).norm() < 1e-12,
                "entry ({i},{j}) differs"
            );
        }
    }
}

fn embed_all_hadamards(num_qubits: usize) -> Matrix {
    let mut m = identity(1 << num_qubits);
    for q in 0..num_qubits {
        m = matmul(&embed_single_qubit(&hadamard_matrix(), q, num_qubits), &m);
    }
    m
}

#[test]
fn gate_level_diffusion_agrees_with_reflection_probabilities_up_to_six_qubits() {
    let mut rng = seeded_rng(7);
    for n in 1..=6 {
        let uniform = StateVector::uniform(n).unwrap();
        for _ in 0..50 {
            let state = random_state(n, &mut rng);
            let mut gate_path = state.clone();
            uniform_diffusion_gate_level(n)
                .unwrap()
                .apply(&mut gate_path)
                .unwrap();
            let mut reflect_path = state.clone();
            reflect_path.reflect_about(&uniform).unwrap();
            for (g, r) in gate_path
                .probabilities()
                .iter()
                .zip(reflect_path.probabilities())
            {
                assert!((g - r).abs() < PER_AMPLITUDE_TOLERANCE);
            }
        }
    }
}

#[test]
fn gate_level_diffusion_negates_the_reflection_amplitudes_on_three_qubits() {
    let mut rng = seeded_rng(11);
    let uniform = StateVector::uniform(3).unwrap();
    for _ in 0..100 {
        let state = random_state(3, &mut rng);
        let mut gate_path = state.clone();
        uniform_diffusion_gate_level(3)
            .unwrap()
            .apply(&mut gate_path)
            .unwrap();
        let mut reflect_path = state;
        reflect_path.reflect_about(&uniform).unwrap();
        for (g, r) in gate_path.amplitudes().iter().zip(reflect_path.amplitudes()) {
            assert!((g + r).norm() < PER_AMPLITUDE_TOLERANCE);
        }
    }
}

#[test]
fn single_iteration_at_one_quarter_matches_the_dense_product() {
    // N=4, M=1: the 2θ = π/3 rotation lands exactly on the target
    let uniform = StateVector::uniform(2).unwrap();
    let oracle = diagonal_matrix(&BTreeSet::from([3]), 2);
    let reflection = reflection_matrix(uniform.amplitudes());
    let dense = matvec(&reflection, &matvec(&oracle, uniform.amplitudes()));
    assert!((dense[3].norm() - 1.0).abs() < 1e-12);

    let mut simulated = uniform.clone();
    simulated
        .apply_diagonal(&DiagonalPhaseOperator::new(2, BTreeSet::from([3])).unwrap())
        .unwrap();
    simulated.reflect_about(&uniform).unwrap();
    assert!(max_amplitude_gap(simulated.amplitudes(), &dense) < 1e-12);
}

#[test]
fn augmented_pipeline_matches_the_dense_product() {
    // worked 3-qubit example: targets {5,6,7}, one diluted iteration
    let problem = SearchProblem::uniform(3, BTreeSet::from([5, 6, 7])).unwrap();
    let phi = 1.2309594173407747;
    let aug = AugmentedProblem::new(&problem, phi);

    // dense axis: (Ry(phi)|0⟩) ⊗ uniform(3), ancilla as the leftmost factor
    let ancilla = matvec(
        &vec![
            vec![ry_matrix(phi)[0][0], ry_matrix(phi)[0][1]],
            vec![ry_matrix(phi)[1][0], ry_matrix(phi)[1][1]],
        ],
        &[one(), zero()],
    );
    let uniform = StateVector::uniform(3).unwrap();
    let mut dense_axis = vec![zero(); 16];
    for (i, amp) in uniform.amplitudes().iter().enumerate() {
        dense_axis[i] = ancilla[0] * amp;
        dense_axis[i + 8] = ancilla[1] * amp;
    }

    let oracle = diagonal_matrix(&BTreeSet::from([5, 6, 7]), 4);
    let reflection = reflection_matrix(&dense_axis);
    let dense = matvec(&reflection, &matvec(&oracle, &dense_axis));

    let simulated_axis = detsearch_core::build_augmented_diffusion_axis(&aug).unwrap();
    assert!(max_amplitude_gap(simulated_axis.amplitudes(), &dense_axis) < 1e-12);
    let mut simulated = simulated_axis.clone();
    simulated
        .apply_diagonal(&detsearch_core::build_controlled_oracle(&aug).unwrap())
        .unwrap();
    simulated.reflect_about(&simulated_axis).unwrap();
    assert!(max_amplitude_gap(simulated.amplitudes(), &dense) < PER_AMPLITUDE_TOLERANCE);

    // all mass ends on the ancilla-0 targets
    let final_mass: f64 = [5, 6, 7].iter().map(|&i| dense[i].norm_sqr()).sum();
    assert!((final_mass - 1.0).abs() < 1e-9);
}
