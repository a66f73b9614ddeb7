//! Concurrence of a few familiar two-qubit states.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use entbound::quantum::{concurrence, random_mixed_state, schmidt_state, TwoQubitState};
use entbound::rng;

fn main() -> entbound::Result<()> {
    println!("product |00>          {:.6}", concurrence(&TwoQubitState::product_zero())?);
    for gamma in [FRAC_PI_8, 0.6, FRAC_PI_4] {
        let c = concurrence(&schmidt_state(gamma)?)?;
        println!("Schmidt γ = {gamma:.4}    {c:.6}  (sin 2γ = {:.6})", (2.0 * gamma).sin());
    }
    for p in [0.2, 1.0 / 3.0, 0.5, 0.9] {
        println!("Werner p = {p:.3}       {:.6}", concurrence(&TwoQubitState::werner(p)?)?);
    }
    let mut r = rng::stream(rng::DEFAULT_SEED, 0);
    for k in 0..3 {
        let rho = random_mixed_state(&mut r);
        println!("random mixed #{k}        {:.6}  (purity {:.3})", concurrence(&rho)?, rho.purity());
    }
    Ok(())
}
