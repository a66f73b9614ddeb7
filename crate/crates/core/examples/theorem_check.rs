//! The maximally entangled pair stops violating at τ = 1/√2 + 1/2.

use entbound::optimizer::{verify_theorem1_qubit, SeesawConfig};
use entbound::rng::DEFAULT_SEED;
use entbound::TAU_CRITICAL_MES;

fn main() -> entbound::Result<()> {
    let taus: Vec<f64> = (0..12).map(|k| TAU_CRITICAL_MES + 0.0001 + 0.024 * k as f64).collect();
    let report = verify_theorem1_qubit(&taus, 100, &SeesawConfig::default(), DEFAULT_SEED)?;
    for row in &report.rows {
        println!(
            "τ = {:.4}  max S = {:+.3e}  identity residual = {:.1e}  {}",
            row.tau,
            row.max_violation,
            row.identity_residual,
            if row.passed { "ok" } else { "FAIL" }
        );
    }
    println!("all passed: {}", report.passed);
    Ok(())
}
