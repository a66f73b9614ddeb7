//! Maximal quantum violations of the tilted CH inequality.
//!
//! * [`seesaw_max_violation`]: `S_Q^(τ)(ρ)` over rank-1 projective measurements.
//! * [`global_max_violation`]: `max_γ S_Q^(τ)(|ψ_γ⟩)` over Schmidt states.
//! * [`critical_gamma`]: the most entangled Schmidt state that still violates.
//! * [`verify_theorem1_qubit`]: the maximally entangled qubit pair never
//!   violates once `τ ≥ 1/√2 + 1/2`.

mod curve;
pub mod scalar;
mod seesaw;
mod theorem;

pub use curve::{critical_gamma, critical_gamma_above, global_max_violation, CriticalCurvePoint, OptimumPoint};
pub use seesaw::{ascend, seesaw_max_violation, Ascent, SeesawOutcome};
pub use theorem::{a8_identity_residual, verify_theorem1_qubit, Theorem1Report, Theorem1Row};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::DEFAULT_SEED;

/// A Bell value above this counts as a violation.
pub const VIOLATION_THRESHOLD: f64 = 1e-10;

/// Resolution of the critical-angle bisection and the golden-section refinement, in γ.
pub const GAMMA_TOLERANCE: f64 = 1e-8;

/// Points in the coarse γ scan preceding golden-section refinement.
pub const GAMMA_GRID_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeesawConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    pub convergence_tol: f64,
    pub rng_seed: u64,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            restarts: 8,
            max_iterations: 10_000,
            convergence_tol: 1e-11,
            rng_seed: DEFAULT_SEED,
        }
    }
}

impl SeesawConfig {
    pub fn with_seed(self, rng_seed: u64) -> Self {
        Self { rng_seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::domain("see-saw needs at least one restart"));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(Error::domain("see-saw convergence tolerance must be positive"));
        }
        Ok(())
    }
}

/// Analytic ceiling on the violation by `cos γ|00⟩ + sin γ|11⟩`:
/// `max{0, 2(1 − τ) sin²γ + (√(1 + sin²2γ) − 1)/2}`.
pub fn analytic_violation_bound(gamma: f64, tau: f64) -> f64 {
    let s2 = (2.0 * gamma).sin().powi(2);
    let value = 2.0 * (1.0 - tau) * gamma.sin().powi(2) + ((1.0 + s2).sqrt() - 1.0) / 2.0;
    value.max(0.0)
}
