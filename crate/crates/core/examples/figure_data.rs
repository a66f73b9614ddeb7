//! Writes the concurrence and violation curves as CSV into a directory.
//!
//! `cargo run --release --example figure_data -- target/figures 100`

use std::fs::{self, File};
use std::path::PathBuf;

use entbound::figures::{compute_curves, tau_grid, write_concurrence_csv, write_violation_csv, CONCURRENCE_CSV, VIOLATION_CSV};
use entbound::optimizer::SeesawConfig;

fn main() -> entbound::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "target/figures".into()));
    let n: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);

    let rows = compute_curves(&tau_grid(1.0, 1.499, n)?, &SeesawConfig::default())?;
    fs::create_dir_all(&dir)?;
    write_concurrence_csv(&rows, File::create(dir.join(CONCURRENCE_CSV))?)?;
    write_violation_csv(&rows, File::create(dir.join(VIOLATION_CSV))?)?;
    println!("{} rows written to {}", rows.len(), dir.display());
    Ok(())
}
