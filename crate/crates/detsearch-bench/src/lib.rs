//! Shared input builders for the kernel benchmarks.

use detsearch_core::{Complex64, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded Haar-ish random state: independent complex Gaussians, normalized.
pub fn random_state(num_qubits: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dimension = 1usize << num_qubits;
    let mut amplitudes: Vec<Complex64> = (0..dimension)
        .map(|_| {
            // Box-Muller gives rotation-invariant components
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen();
            let r = (-2.0 * u1.ln()).sqrt();
            Complex64::new(
                r * (std::f64::consts::TAU * u2).cos(),
                r * (std::f64::consts::TAU * u2).sin(),
            )
        })
        .collect();
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for amp in &mut amplitudes {
        *amp /= norm;
    }
    StateVector::from_amplitudes(amplitudes).expect("normalized by construction")
}
