//! Random experiments on known states: the reported interval must contain
//! the true concurrence every time.

use entbound::bell::coefficients;
use entbound::measurement::MeasurementSet;
use entbound::optimizer::{seesaw_max_violation, SeesawConfig};
use entbound::quantum::schmidt_state;
use entbound::rng;
use entbound::verify::bracketing_trials;
use rand::Rng;

fn main() -> entbound::Result<()> {
    let mut r = rng::stream(rng::DEFAULT_SEED, 1);
    let random = bracketing_trials(500, &mut r, 1e-6, |_, r| Ok(MeasurementSet::random(r)))?;
    println!("random settings:    {random:?}");

    let cfg = SeesawConfig { restarts: 2, ..SeesawConfig::default() };
    let tuned = bracketing_trials(200, &mut r, 1e-6, |gamma, r| {
        let tau = r.random_range(1.0..1.45);
        Ok(seesaw_max_violation(&schmidt_state(gamma)?, &coefficients(tau)?, &cfg)?.measurements)
    })?;
    println!("optimized settings: {tuned:?}");
    Ok(())
}
