use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quantum::{projector_from_bloch, BlochVector, Projector2x2};

/// Two rank-1 projective measurements per party, one Bloch vector per setting.
///
/// The outcome-0 projector of setting `x` is `½(1 + n_x·σ⃗)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSet {
    pub alice: [BlochVector; 2],
    pub bob: [BlochVector; 2],
}

impl MeasurementSet {
    pub fn new(alice: [BlochVector; 2], bob: [BlochVector; 2]) -> Self {
        Self { alice, bob }
    }

    /// All four directions in the x–z plane, given as polar angles.
    pub fn in_plane(alice: [f64; 2], bob: [f64; 2]) -> Self {
        Self {
            alice: alice.map(BlochVector::in_plane),
            bob: bob.map(BlochVector::in_plane),
        }
    }

    /// Alice along z and x, Bob at ±π/4 in the x–z plane.
    pub fn chsh_optimal() -> Self {
        Self::in_plane([0.0, FRAC_PI_2], [FRAC_PI_4, -FRAC_PI_4])
    }

    /// Every setting along +z.
    pub fn computational() -> Self {
        Self::in_plane([0.0; 2], [0.0; 2])
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            alice: [BlochVector::random(rng), BlochVector::random(rng)],
            bob: [BlochVector::random(rng), BlochVector::random(rng)],
        }
    }

    pub fn alice_projector(&self, x: usize, a: u8) -> Result<Projector2x2> {
        projector_from_bloch(&self.alice[x], a)
    }

    pub fn bob_projector(&self, y: usize, b: u8) -> Result<Projector2x2> {
        projector_from_bloch(&self.bob[y], b)
    }

    /// Polar angles `[a0, a1, b0, b1]`; exact only for in-plane directions.
    pub fn polar_angles(&self) -> [f64; 4] {
        let angle = |n: &BlochVector| n.x().atan2(n.z());
        [
            angle(&self.alice[0]),
            angle(&self.alice[1]),
            angle(&self.bob[0]),
            angle(&self.bob[1]),
        ]
    }
}
