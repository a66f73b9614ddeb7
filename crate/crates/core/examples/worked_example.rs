//! Bounds on the concurrence of the photonic source behind the bundled
//! CH slice: `cargo run --example worked_example`.

use entbound::bounds::{assemble_report, ReportOptions};
use entbound::io::StatisticsInput;
use entbound::verify::worked_example_slice;

fn main() -> entbound::Result<()> {
    let slice = worked_example_slice();
    let opts = ReportOptions { projective: true, numeric_upper_bound: true, ..ReportOptions::default() };
    let report = assemble_report(&StatisticsInput::Slice(slice), &opts)?;
    print!("{}", report.summary());
    println!(
        "=> {:.4} ≤ C ≤ {:.4}",
        report.lower_bound,
        report.tightest_upper_bound()
    );
    Ok(())
}
