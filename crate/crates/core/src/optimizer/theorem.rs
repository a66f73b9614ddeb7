//! Numeric check that the maximally entangled qubit pair cannot violate
//! the tilted CH inequality for `τ ≥ 1/√2 + 1/2`.

use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;
use serde::Serialize;

use super::{seesaw_max_violation, SeesawConfig};
use crate::bell::{coefficients, quantum_value};
use crate::error::{Error, Result};
use crate::measurement::MeasurementSet;
use crate::quantum::schmidt_state;
use crate::rng::{self, Rng};
use crate::{TAU_CRITICAL_MES, TAU_MAX};

/// Largest see-saw value tolerated for the maximally entangled state.
pub const MAX_VIOLATION_TOL: f64 = 1e-9;
/// Tolerance on `S^(τ) = S^(CH) − (τ − 1)` for the maximally entangled state.
pub const IDENTITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Theorem1Row {
    pub tau: f64,
    pub max_violation: f64,
    pub identity_residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub rows: Vec<Theorem1Row>,
    pub passed: bool,
}

impl Theorem1Report {
    pub fn failures(&self) -> impl Iterator<Item = &Theorem1Row> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

/// Worst `|S^(τ) − (S^(1) − (τ − 1))|` on the maximally entangled state over
/// `samples` random measurement sets. Uniform marginals make this exact.
pub fn a8_identity_residual(tau: f64, samples: usize, rng: &mut Rng) -> Result<f64> {
    let mes = schmidt_state(FRAC_PI_4)?;
    let tilted = coefficients(tau)?;
    let ch = coefficients(1.0)?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let m = MeasurementSet::random(rng);
        let lhs = quantum_value(&mes, &m, &tilted)?.value;
        let rhs = quantum_value(&mes, &m, &ch)?.value - (tau - 1.0);
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Runs both checks at every τ of the grid. Row `i` draws its measurement
/// sets from the stream derived from `(seed, i)`.
pub fn verify_theorem1_qubit(
    taus: &[f64],
    samples: usize,
    cfg: &SeesawConfig,
    seed: u64,
) -> Result<Theorem1Report> {
    if let Some(bad) = taus.iter().find(|t| !(**t >= TAU_CRITICAL_MES && **t < TAU_MAX)) {
        return Err(Error::domain(format!("τ = {bad} outside [1/√2 + 1/2, 3/2)")));
    }
    let mes = schmidt_state(FRAC_PI_4)?;
    let rows = taus
        .par_iter()
        .enumerate()
        .map(|(i, &tau)| {
            let max_violation = seesaw_max_violation(&mes, &coefficients(tau)?, cfg)?.value.value;
            let mut rng = rng::stream(rng::derive_seed(seed, i as u64), 0);
            let identity_residual = a8_identity_residual(tau, samples, &mut rng)?;
            Ok(Theorem1Row {
                tau,
                max_violation,
                identity_residual,
                passed: max_violation <= MAX_VIOLATION_TOL && identity_residual <= IDENTITY_TOL,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = rows.iter().all(|r| r.passed);
    Ok(Theorem1Report { rows, passed })
}
