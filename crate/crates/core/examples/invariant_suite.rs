//! Runs the full invariant suite programmatically.

fn main() -> entbound::Result<()> {
    let summary = entbound::verify::run_suite(entbound::rng::DEFAULT_SEED, entbound::stats::DEFAULT_TOLERANCE)?;
    print!("{}", summary.render());
    if !summary.passed() {
        std::process::exit(1);
    }
    Ok(())
}
