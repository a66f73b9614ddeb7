//! The tilted Clauser-Horne family `S^(τ) = Σ β_{xy}^{ab} p(a,b|x,y)`.
//!
//! Only `p(0,0|x,y)`, `p(0,1|0,1)` and `p(1,0|1,0)` carry nonzero weight.
//! Under no-signaling the polynomial collapses to
//!
//! ```text
//! S^(τ) = S^(CH) + (1 − τ)[p_A(0|0) + p_B(0|0)]
//! S^(CH) = p(00|00) + p(00|01) + p(00|10) − p(00|11) − p_A(0|0) − p_B(0|0)
//! ```
//!
//! which is affine and, whenever the marginals are nonzero, strictly
//! decreasing in `τ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measurement::MeasurementSet;
use crate::quantum::{joint_probability, TwoQubitState};
use crate::stats::{ChSlice, ProbabilityTable};
use crate::TAU_MAX;

/// Dense `(x, y, a, b)` index, lexicographic.
#[inline]
pub const fn index(x: usize, y: usize, a: usize, b: usize) -> usize {
    (x << 3) | (y << 2) | (a << 1) | b
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TiltedChCoefficients {
    tau: f64,
    beta: [f64; 16],
}

impl TiltedChCoefficients {
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Symmetric detection efficiency `η = 1/τ`.
    pub fn eta(&self) -> f64 {
        1.0 / self.tau
    }

    pub fn beta(&self, x: usize, y: usize, a: usize, b: usize) -> f64 {
        self.beta[index(x, y, a, b)]
    }

    pub fn table(&self) -> &[f64; 16] {
        &self.beta
    }

    fn build(tau: f64) -> Self {
        let mut beta = [0.0; 16];
        beta[index(0, 0, 0, 0)] = 1.0;
        beta[index(1, 1, 0, 0)] = -1.0;
        beta[index(0, 1, 0, 0)] = 1.0 - tau;
        beta[index(1, 0, 0, 0)] = 1.0 - tau;
        beta[index(0, 1, 0, 1)] = -tau;
        beta[index(1, 0, 1, 0)] = -tau;
        Self { tau, beta }
    }
}

/// Coefficients for `1 ≤ τ < 3/2`.
pub fn coefficients(tau: f64) -> Result<TiltedChCoefficients> {
    if !(1.0..TAU_MAX).contains(&tau) {
        return Err(Error::domain(format!("tilt τ = {tau} outside [1, 3/2)")));
    }
    Ok(TiltedChCoefficients::build(tau))
}

/// Coefficients for any `τ ≥ 1`, including the trivially satisfied range
/// `τ ≥ 3/2`. Used by validation checks only.
pub fn coefficients_unbounded(tau: f64) -> Result<TiltedChCoefficients> {
    if !(tau >= 1.0 && tau.is_finite()) {
        return Err(Error::domain(format!("tilt τ = {tau} below 1")));
    }
    Ok(TiltedChCoefficients::build(tau))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BellValue {
    pub value: f64,
    pub tau: f64,
}

impl BellValue {
    pub fn violates(&self, threshold: f64) -> bool {
        self.value > threshold
    }
}

/// `S^(CH)` from the eight numbers of a slice.
pub fn ch_value(slice: &ChSlice) -> f64 {
    slice.j00 + slice.j01 + slice.j10 - slice.j11 - slice.m_a0 - slice.m_b0
}

/// `S^(τ)_Obs` through the CH-plus-marginal form.
pub fn evaluate_classical(slice: &ChSlice, tau: f64) -> BellValue {
    BellValue {
        value: ch_value(slice) + (1.0 - tau) * (slice.m_a0 + slice.m_b0),
        tau,
    }
}

/// `S^(τ)` as the direct coefficient sum over a full table.
pub fn evaluate_table(table: &ProbabilityTable, coeffs: &TiltedChCoefficients) -> BellValue {
    let value = coeffs
        .beta
        .iter()
        .zip(table.entries())
        .map(|(b, p)| b * p)
        .sum();
    BellValue { value, tau: coeffs.tau }
}

/// `Σ β tr(ρ A_x^a ⊗ B_y^b)`.
pub fn quantum_value(
    rho: &TwoQubitState,
    m: &MeasurementSet,
    coeffs: &TiltedChCoefficients,
) -> Result<BellValue> {
    let mut value = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2u8 {
                for b in 0..2u8 {
                    let beta = coeffs.beta(x, y, a as usize, b as usize);
                    if beta != 0.0 {
                        let pa = m.alice_projector(x, a)?;
                        let pb = m.bob_projector(y, b)?;
                        value += beta * joint_probability(rho, &pa, &pb);
                    }
                }
            }
        }
    }
    Ok(BellValue { value, tau: coeffs.tau })
}
