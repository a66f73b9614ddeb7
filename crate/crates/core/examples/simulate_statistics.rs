//! Simulate a Bell experiment on `cos γ|00⟩ + sin γ|11⟩`, check the table
//! and write it in the `full` file format.
//!
//! `cargo run --example simulate_statistics -- 0.6 out.json`

use entbound::bell::evaluate_classical;
use entbound::io::table_to_json;
use entbound::measurement::MeasurementSet;
use entbound::quantum::schmidt_state;
use entbound::stats::{ch_slice, simulate, validate, DEFAULT_TOLERANCE};

fn main() -> entbound::Result<()> {
    let mut args = std::env::args().skip(1);
    let gamma: f64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0.6);
    let table = simulate(&schmidt_state(gamma)?, &MeasurementSet::chsh_optimal())?;

    println!("{}", validate(&table, DEFAULT_TOLERANCE)?);
    let slice = ch_slice(&table);
    for tau in [1.0, 1.1, 1.2] {
        println!("S^({tau}) = {:+.6}", evaluate_classical(&slice, tau).value);
    }
    match args.next() {
        Some(path) => {
            entbound::io::save_table(&table, &path)?;
            println!("wrote {path}");
        }
        None => print!("{}", table_to_json(&table)),
    }
    Ok(())
}
