//! Closed-form iteration planning.
//!
//! A search with initial success probability p rotates by 2θ per iteration,
//! θ = asin(√p). Success after k iterations is sin²((2k+1)θ), which reaches
//! 1 exactly when k = π/(4θ) − 1/2 is a natural number. When it is not, the
//! plan dilutes p to the nearest smaller p′ whose iteration count k′ =
//! ⌊k⌋ + 1 is natural, by rotating an auxiliary qubit through the angle φ
//! with p′ = p·cos²(φ/2).

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance within which a computed iteration count counts as natural.
pub const DEFAULT_NATURAL_TOLERANCE: f64 = 1e-9;

/// An initial success probability together with its rotation angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchAngles {
    p: f64,
    theta: f64,
}

impl SearchAngles {
    pub fn from_probability(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::ProbabilityOutOfRange { p });
        }
        Ok(Self {
            p,
            theta: p.sqrt().asin(),
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Rotation half-angle in (0, π/2).
    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Full output of the planning pipeline.
///
/// With `needs_auxiliary = false` the raw count was already natural and the
/// search runs unmodified. Otherwise the auxiliary qubit is rotated by `phi`
/// so the diluted probability `p_prime = p * alpha_sq` needs exactly
/// `k_prime` iterations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeterministicPlan {
    /// Raw (generally fractional) iteration count for the given p.
    pub k: f64,
    /// Number of iterations actually executed.
    pub k_prime: u64,
    /// Whether an auxiliary qubit must be attached.
    pub needs_auxiliary: bool,
    /// Effective initial success probability after dilution.
    pub p_prime: f64,
    /// Auxiliary rotation angle in [0, π).
    pub phi: f64,
    /// cos²(phi/2) = p_prime / p.
    pub alpha_sq: f64,
}

/// Raw iteration count π/(4·asin(√p)) − 1/2.
pub fn compute_k(p: f64) -> Result<f64> {
    let angles = SearchAngles::from_probability(p)?;
    Ok(PI / (4.0 * angles.theta()) - 0.5)
}

/// Success probability sin²((2k+1)·asin(√p)) after `iterations` iterations.
pub fn predicted_success(p: f64, iterations: u64) -> Result<f64> {
    let angles = SearchAngles::from_probability(p)?;
    let angle = (2 * iterations + 1) as f64 * angles.theta();
    Ok(angle.sin().powi(2))
}

/// Probability whose exact iteration count is the natural number `k_prime`.
fn dilution_target(k_prime: u64) -> f64 {
    let angle = PI / (4.0 * (k_prime as f64 + 0.5));
    angle.sin().powi(2)
}

/// Decide iteration count, dilution and auxiliary rotation for p.
///
/// `natural_tolerance` bounds |k − round(k)| for k to count as natural;
/// a raw count within tolerance of an integer from below is treated as
/// natural rather than bumped to ⌊k⌋ + 1.
pub fn make_plan(p: f64, natural_tolerance: f64) -> Result<DeterministicPlan> {
    if !natural_tolerance.is_finite() || !(0.0..0.5).contains(&natural_tolerance) {
        return Err(Error::InvalidTolerance {
            tolerance: natural_tolerance,
        });
    }
    let k = compute_k(p)?;
    if k >= u64::MAX as f64 {
        return Err(Error::IterationCountOverflow { p });
    }
    let rounded = k.round();
    if (k - rounded).abs() <= natural_tolerance {
        return Ok(DeterministicPlan {
            k,
            k_prime: rounded as u64,
            needs_auxiliary: false,
            p_prime: p,
            phi: 0.0,
            alpha_sq: 1.0,
        });
    }
    let k_prime = k.floor() as u64 + 1;
    let p_prime = dilution_target(k_prime);
    // p_prime < p is guaranteed since k_prime > k; clamp guards float dust.
    let alpha_sq = (p_prime / p).min(1.0);
    let phi = 2.0 * alpha_sq.sqrt().acos();
    Ok(DeterministicPlan {
        k,
        k_prime,
        needs_auxiliary: true,
        p_prime,
        phi,
        alpha_sq,
    })
}

/// True iff one standard iteration cannot improve on p, i.e. p >= 1/2.
pub fn no_advantage_check(p: f64) -> Result<bool> {
    SearchAngles::from_probability(p)?;
    Ok(p >= 0.5)
}

/// Asymptotic iteration count (π/4)·√(N/M) − 1/2 for M targets among N states.
pub fn approx_iterations(n_states: u64, n_targets: u64) -> Result<f64> {
    if n_targets == 0 || n_targets >= n_states {
        return Err(Error::InvalidTargetCount {
            n_states,
            n_targets,
        });
    }
    Ok(PI / 4.0 * (n_states as f64 / n_targets as f64).sqrt() - 0.5)
}
