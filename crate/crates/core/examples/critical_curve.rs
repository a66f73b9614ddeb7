//! Optimal and critical Schmidt states versus the tilt.

use entbound::bounds::upper_bound_analytic;
use entbound::optimizer::{critical_gamma_above, global_max_violation, SeesawConfig};
use entbound::TAU_CRITICAL_MES;

fn main() -> entbound::Result<()> {
    let cfg = SeesawConfig::default();
    println!("   τ      γ*      C(ψ*)     S_Q        C_cr     C_τ");
    for tau in [1.0, 1.1, 1.2, TAU_CRITICAL_MES, 1.25, 1.3, 1.35, 1.4, 1.45, 1.49] {
        let peak = global_max_violation(tau, &cfg)?;
        let critical = if tau >= TAU_CRITICAL_MES {
            let c = critical_gamma_above(&peak, &cfg)?;
            format!("{:.5}  {:.5}", c.c_cr, upper_bound_analytic(tau)?)
        } else {
            "   -        -".to_string()
        };
        println!(
            "{tau:.4}  {:.5}  {:.5}  {:.7}  {critical}",
            peak.gamma_star,
            peak.concurrence(),
            peak.s_q
        );
    }
    Ok(())
}
