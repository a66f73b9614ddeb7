//! Semi-device-independent bounds on the concurrence of a two-qubit state.
//!
//! The input is nothing more than observed two-setting, two-outcome
//! statistics `p(a,b|x,y)`. From them the crate derives
//!
//! * a lower bound on the concurrence from the Clauser-Horne value,
//! * an upper bound from the largest tilt `τ` at which the tilted CH
//!   inequality is still violated (analytic and numeric variants),
//! * an upper bound from the marginals when measurements are known to be
//!   projective.
//!
//! A small two-qubit simulator ([`quantum`], [`stats::simulate`]) and a
//! see-saw optimizer ([`optimizer`]) generate statistics and cross-check
//! every bound.
//!
//! ```
//! use entbound::{bounds, stats::ChSlice};
//!
//! let slice = ChSlice::new(0.3811, 0.3593, 0.3789, 0.0671, 0.4025, 0.4806, 0.4671, 0.5058)?;
//! let s_ch = entbound::bell::ch_value(&slice);
//! assert!((bounds::lower_bound_concurrence(s_ch) - 0.9294).abs() < 1e-3);
//! # Ok::<(), entbound::Error>(())
//! ```

pub mod bell;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod figures;
pub mod io;
pub mod measurement;
pub mod optimizer;
pub mod quantum;
pub mod rng;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};

/// Tilt at which the maximally entangled two-qubit state stops violating, `1/√2 + 1/2`.
pub const TAU_CRITICAL_MES: f64 = std::f64::consts::FRAC_1_SQRT_2 + 0.5;

/// Upper end of the tilt range; no valid distribution violates at or above it.
pub const TAU_MAX: f64 = 1.5;
