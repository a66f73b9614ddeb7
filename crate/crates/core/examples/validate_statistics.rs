//! Load a statistics file, validate it and print the bounds.
//!
//! `cargo run --example validate_statistics -- path/to/stats.json`

use entbound::bounds::{assemble_report, ReportOptions};
use entbound::Error;

fn main() {
    let Some(path) = std::env::args().nth(1) else {
        eprintln!("usage: validate_statistics <file.json>");
        std::process::exit(2);
    };
    let result = entbound::io::load(&path).and_then(|input| assemble_report(&input, &ReportOptions::default()));
    match result {
        Ok(report) => print!("{}", report.summary()),
        Err(Error::Validation(v)) => {
            eprintln!("rejected: {v}");
            std::process::exit(3);
        }
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    }
}
