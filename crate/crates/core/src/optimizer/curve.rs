use std::f64::consts::FRAC_PI_4;

use rayon::prelude::*;
use serde::Serialize;

use super::scalar::{bisect_last_true, golden_section_max};
use super::{seesaw_max_violation, SeesawConfig, GAMMA_GRID_POINTS, GAMMA_TOLERANCE, VIOLATION_THRESHOLD};
use crate::bell::{coefficients, TiltedChCoefficients};
use crate::error::{Error, Result};
use crate::measurement::MeasurementSet;
use crate::quantum::schmidt_state;
use crate::TAU_CRITICAL_MES;

/// Maximal violation over Schmidt states at fixed τ.
#[derive(Clone, Debug, Serialize)]
pub struct OptimumPoint {
    pub tau: f64,
    pub gamma_star: f64,
    pub s_q: f64,
    pub measurements: MeasurementSet,
}

impl OptimumPoint {
    /// Concurrence of the optimal state, `sin 2γ*`.
    pub fn concurrence(&self) -> f64 {
        (2.0 * self.gamma_star).sin()
    }
}

/// Most entangled Schmidt state still violating at τ.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CriticalCurvePoint {
    pub tau: f64,
    pub gamma_c: f64,
    pub c_cr: f64,
    /// Peak violation over γ at this τ.
    pub s_at_peak: f64,
}

fn violation_at(gamma: f64, coeffs: &TiltedChCoefficients, cfg: &SeesawConfig) -> Result<(f64, MeasurementSet)> {
    let out = seesaw_max_violation(&schmidt_state(gamma)?, coeffs, cfg)?;
    Ok((out.value.value, out.measurements))
}

fn gamma_grid() -> Vec<f64> {
    (0..GAMMA_GRID_POINTS)
        .map(|k| FRAC_PI_4 * k as f64 / (GAMMA_GRID_POINTS - 1) as f64)
        .collect()
}

/// `max_γ S_Q^(τ)(|ψ_γ⟩)`: a 64-point scan of `[0, π/4]` followed by
/// golden-section refinement around the best grid point.
pub fn global_max_violation(tau: f64, cfg: &SeesawConfig) -> Result<OptimumPoint> {
    let coeffs = coefficients(tau)?;
    cfg.validate()?;
    let grid = gamma_grid();
    let values = grid
        .par_iter()
        .map(|&g| violation_at(g, &coeffs, cfg))
        .collect::<Result<Vec<_>>>()?;

    let mut k_best = 0;
    for (k, (v, _)) in values.iter().enumerate() {
        if *v > values[k_best].0 {
            k_best = k;
        }
    }
    let mut best = OptimumPoint {
        tau,
        gamma_star: grid[k_best],
        s_q: values[k_best].0,
        measurements: values[k_best].1,
    };

    let lo = grid[k_best.saturating_sub(1)];
    let hi = grid[(k_best + 1).min(grid.len() - 1)];
    let mut failure = None;
    let (g, _) = golden_section_max(
        |g| match violation_at(g, &coeffs, cfg) {
            Ok((v, _)) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NEG_INFINITY
            }
        },
        lo,
        hi,
        GAMMA_TOLERANCE,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let (v, m) = violation_at(g, &coeffs, cfg)?;
    if v > best.s_q {
        best = OptimumPoint { tau, gamma_star: g, s_q: v, measurements: m };
    }
    Ok(best)
}

/// Largest γ whose see-saw violation exceeds [`VIOLATION_THRESHOLD`],
/// located by bisection between the optimal γ* and π/4.
pub fn critical_gamma(tau: f64, cfg: &SeesawConfig) -> Result<CriticalCurvePoint> {
    if !(TAU_CRITICAL_MES - 1e-12..crate::TAU_MAX).contains(&tau) {
        return Err(Error::domain(format!(
            "critical state defined for τ in [1/√2 + 1/2, 3/2), got {tau}"
        )));
    }
    let peak = global_max_violation(tau, cfg)?;
    critical_gamma_above(&peak, cfg)
}

/// [`critical_gamma`] reusing an optimum already computed at the same τ.
pub fn critical_gamma_above(peak: &OptimumPoint, cfg: &SeesawConfig) -> Result<CriticalCurvePoint> {
    let tau = peak.tau;
    if !(TAU_CRITICAL_MES - 1e-12..crate::TAU_MAX).contains(&peak.tau) {
        return Err(Error::domain(format!(
            "critical state defined for τ in [1/√2 + 1/2, 3/2), got {tau}"
        )));
    }
    let coeffs = coefficients(tau)?;
    if peak.s_q <= VIOLATION_THRESHOLD {
        return Err(Error::Computation(format!(
            "no violating Schmidt state found at τ = {tau}: peak {:.3e} at γ = {:.6}",
            peak.s_q, peak.gamma_star
        )));
    }

    let violates = |g: f64| -> Result<bool> { Ok(violation_at(g, &coeffs, cfg)?.0 > VIOLATION_THRESHOLD) };
    let gamma_c = if violates(FRAC_PI_4)? {
        FRAC_PI_4
    } else {
        let mut failure = None;
        let g = bisect_last_true(
            |g| match violates(g) {
                Ok(b) => b,
                Err(e) => {
                    failure.get_or_insert(e);
                    false
                }
            },
            peak.gamma_star,
            FRAC_PI_4,
            GAMMA_TOLERANCE,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        g
    };
    Ok(CriticalCurvePoint {
        tau,
        gamma_c,
        c_cr: (2.0 * gamma_c).sin(),
        s_at_peak: peak.s_q,
    })
}
