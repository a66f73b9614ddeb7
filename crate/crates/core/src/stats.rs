//! Observed statistics: full tables, CH slices, validation and simulation.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bell::index;
use crate::error::{Error, Result};
use crate::measurement::MeasurementSet;
use crate::quantum::{joint_probability, TwoQubitState};

/// Default hard threshold for [`validate`]; the warn band extends to ten times it.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Range(format!("{name} = {p} outside [0, 1]")));
    }
    Ok(())
}

/// `p(a,b|x,y)` for `a, b, x, y ∈ {0, 1}`, stored in `(x, y, a, b)` order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbabilityTable {
    p: [f64; 16],
}

impl ProbabilityTable {
    pub fn new(p: [f64; 16]) -> Result<Self> {
        for (i, v) in p.iter().enumerate() {
            check_probability(&format!("p[{i}]"), *v)?;
        }
        Ok(Self { p })
    }

    /// White noise, `p = 1/4` everywhere.
    pub fn uniform() -> Self {
        Self { p: [0.25; 16] }
    }

    pub fn get(&self, x: usize, y: usize, a: usize, b: usize) -> f64 {
        self.p[index(x, y, a, b)]
    }

    pub fn entries(&self) -> &[f64; 16] {
        &self.p
    }

    /// Alice's `p_A(a|x)` read from the block with Bob's setting `y`.
    pub fn marginal_a(&self, x: usize, a: usize, y: usize) -> f64 {
        self.get(x, y, a, 0) + self.get(x, y, a, 1)
    }

    /// Bob's `p_B(b|y)` read from the block with Alice's setting `x`.
    pub fn marginal_b(&self, y: usize, b: usize, x: usize) -> f64 {
        self.get(x, y, 0, b) + self.get(x, y, 1, b)
    }
}

/// The eight numbers entering `S^(τ)`: `p(0,0|x,y)` and the outcome-0 marginals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChSlice {
    pub j00: f64,
    pub j01: f64,
    pub j10: f64,
    pub j11: f64,
    pub m_a0: f64,
    pub m_a1: f64,
    pub m_b0: f64,
    pub m_b1: f64,
}

impl ChSlice {
    /// Joints `p(0,0|x,y)` first, then `p_A(0|0)`, `p_A(0|1)`, `p_B(0|0)`, `p_B(0|1)`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        j00: f64,
        j01: f64,
        j10: f64,
        j11: f64,
        m_a0: f64,
        m_a1: f64,
        m_b0: f64,
        m_b1: f64,
    ) -> Result<Self> {
        let slice = Self { j00, j01, j10, j11, m_a0, m_a1, m_b0, m_b1 };
        for (name, v) in slice.named() {
            check_probability(name, v)?;
        }
        Ok(slice)
    }

    pub fn named(&self) -> [(&'static str, f64); 8] {
        [
            ("j00", self.j00),
            ("j01", self.j01),
            ("j10", self.j10),
            ("j11", self.j11),
            ("mA0", self.m_a0),
            ("mA1", self.m_a1),
            ("mB0", self.m_b0),
            ("mB1", self.m_b1),
        ]
    }

    pub fn joint(&self, x: usize, y: usize) -> f64 {
        match (x, y) {
            (0, 0) => self.j00,
            (0, 1) => self.j01,
            (1, 0) => self.j10,
            _ => self.j11,
        }
    }

    pub fn marginal_a(&self, x: usize) -> f64 {
        if x == 0 { self.m_a0 } else { self.m_a1 }
    }

    pub fn marginal_b(&self, y: usize) -> f64 {
        if y == 0 { self.m_b0 } else { self.m_b1 }
    }

    pub fn marginals(&self) -> [f64; 4] {
        [self.m_a0, self.m_a1, self.m_b0, self.m_b1]
    }

    /// Largest excess of a joint over the smaller of its two marginals.
    pub fn consistency_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for x in 0..2 {
            for y in 0..2 {
                let excess = self.joint(x, y) - self.marginal_a(x).min(self.marginal_b(y));
                worst = worst.max(excess);
            }
        }
        worst
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Warn,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub normalization_residual: f64,
    pub nosignaling_residual: f64,
    pub consistency_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

impl ValidationReport {
    fn from_residuals(normalization: f64, nosignaling: f64, consistency: f64, tol: f64) -> Self {
        let worst = normalization.max(nosignaling).max(consistency);
        let verdict = if worst <= tol {
            Verdict::Pass
        } else if worst <= 10.0 * tol {
            Verdict::Warn
        } else {
            Verdict::Fail
        };
        Self {
            normalization_residual: normalization,
            nosignaling_residual: nosignaling,
            consistency_residual: consistency,
            tolerance: tol,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} (normalization {:.3e}, no-signaling {:.3e}, consistency {:.3e}, tol {:.1e})",
            self.verdict,
            self.normalization_residual,
            self.nosignaling_residual,
            self.consistency_residual,
            self.tolerance
        )
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!("validation tolerance {tol} must be positive")));
    }
    Ok(())
}

/// Normalization, no-signaling and joint/marginal consistency residuals.
pub fn validate(table: &ProbabilityTable, tol: f64) -> Result<ValidationReport> {
    check_tolerance(tol)?;
    let mut normalization = 0.0f64;
    let mut nosignaling = 0.0f64;
    for x in 0..2 {
        for y in 0..2 {
            let total: f64 = (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).map(|(a, b)| table.get(x, y, a, b)).sum();
            normalization = normalization.max((total - 1.0).abs());
        }
    }
    for a in 0..2 {
        for x in 0..2 {
            nosignaling = nosignaling.max((table.marginal_a(x, a, 0) - table.marginal_a(x, a, 1)).abs());
        }
    }
    for b in 0..2 {
        for y in 0..2 {
            nosignaling = nosignaling.max((table.marginal_b(y, b, 0) - table.marginal_b(y, b, 1)).abs());
        }
    }
    let consistency = ch_slice(table).consistency_residual().max(0.0);
    Ok(ValidationReport::from_residuals(normalization, nosignaling, consistency, tol))
}

/// A slice carries no normalization or signaling information; only the
/// joints-below-marginals check applies.
pub fn validate_slice(slice: &ChSlice, tol: f64) -> Result<ValidationReport> {
    check_tolerance(tol)?;
    Ok(ValidationReport::from_residuals(0.0, 0.0, slice.consistency_residual().max(0.0), tol))
}

/// Extracts the eight CH numbers. Alice's marginals come from the `y = 0`
/// blocks and Bob's from the `x = 0` blocks.
pub fn ch_slice(table: &ProbabilityTable) -> ChSlice {
    ChSlice {
        j00: table.get(0, 0, 0, 0),
        j01: table.get(0, 1, 0, 0),
        j10: table.get(1, 0, 0, 0),
        j11: table.get(1, 1, 0, 0),
        m_a0: table.marginal_a(0, 0, 0),
        m_a1: table.marginal_a(1, 0, 0),
        m_b0: table.marginal_b(0, 0, 0),
        m_b1: table.marginal_b(1, 0, 0),
    }
}

/// Born-rule statistics of `ρ` under the measurement set.
pub fn simulate(rho: &TwoQubitState, m: &MeasurementSet) -> Result<ProbabilityTable> {
    let mut p = [0.0; 16];
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2u8 {
                let pa = m.alice_projector(x, a)?;
                for b in 0..2u8 {
                    let pb = m.bob_projector(y, b)?;
                    p[index(x, y, a as usize, b as usize)] = joint_probability(rho, &pa, &pb);
                }
            }
        }
    }
    Ok(ProbabilityTable { p })
}

/// Random point of the no-signaling polytope: a random convex mixture of
/// its 24 vertices (16 local deterministic boxes, 8 PR-type boxes).
pub fn random_nonsignaling_table<R: Rng + ?Sized>(rng: &mut R) -> ProbabilityTable {
    let mut vertices: Vec<[f64; 16]> = Vec::with_capacity(24);
    for f in 0..4usize {
        for g in 0..4usize {
            let mut p = [0.0; 16];
            for x in 0..2 {
                for y in 0..2 {
                    let a = (f >> x) & 1;
                    let b = (g >> y) & 1;
                    p[index(x, y, a, b)] = 1.0;
                }
            }
            vertices.push(p);
        }
    }
    for shift in 0..8usize {
        let (alpha, beta, gamma) = (shift & 1, (shift >> 1) & 1, (shift >> 2) & 1);
        let mut p = [0.0; 16];
        for x in 0..2 {
            for y in 0..2 {
                for a in 0..2 {
                    let b = a ^ (x & y) ^ (alpha & x) ^ (beta & y) ^ gamma;
                    p[index(x, y, a, b)] = 0.5;
                }
            }
        }
        vertices.push(p);
    }

    // Sparse weights reach the polytope's faces as well as its interior.
    let active = rng.random_range(1..=24usize);
    let mut weights = [0.0; 24];
    for _ in 0..active {
        let k = rng.random_range(0..24usize);
        weights[k] += -(1.0 - rng.random::<f64>()).ln();
    }
    let total: f64 = weights.iter().sum();
    let mut p = [0.0; 16];
    for (w, v) in weights.iter().zip(&vertices) {
        for i in 0..16 {
            p[i] += w / total * v[i];
        }
    }
    ProbabilityTable { p: p.map(|v| v.clamp(0.0, 1.0)) }
}
