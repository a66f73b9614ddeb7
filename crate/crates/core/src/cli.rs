//! The `entbound` command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse / schema / range / domain or
//! usage error, 3 validation failure (including a failed `verify` suite),
//! 4 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds::{assemble_report, ReportOptions};
use crate::error::{Error, Result};
use crate::figures::{compute_curves, tau_grid, write_concurrence_csv, write_violation_csv, CONCURRENCE_CSV, VIOLATION_CSV};
use crate::io::{self, StatisticsInput};
use crate::measurement::MeasurementSet;
use crate::optimizer::{global_max_violation, SeesawConfig};
use crate::quantum::schmidt_state;
use crate::rng::DEFAULT_SEED;
use crate::stats::{simulate, DEFAULT_TOLERANCE};
use crate::verify::run_suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

const DEMO_SLICE: &str = include_str!("../data/ch_slice_example.json");

#[derive(Debug, Parser)]
#[command(name = "entbound", version, about = "Bound two-qubit concurrence from Bell statistics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Seed for every random stream.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Hard validation threshold; the warn band is ten times larger.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bound the concurrence from a statistics file.
    Bound {
        #[arg(long)]
        input: PathBuf,
        /// Write the full JSON report here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Measurements are known to be projective (enables the marginal bound).
        #[arg(long)]
        projective: bool,
        /// Also compute the see-saw based upper bound.
        #[arg(long)]
        numeric_ub: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Simulate a Schmidt state under in-plane measurements.
    Simulate {
        #[arg(long)]
        gamma: f64,
        /// Polar angles a0,a1,b0,b1 in radians.
        #[arg(long, value_delimiter = ',', num_args = 4, default_value = "0,0,0,0", allow_hyphen_values = true)]
        angles: Vec<f64>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Maximal violation over Schmidt states at one tilt.
    Optimize {
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Figure data: concurrence and violation versus τ.
    Curves {
        #[arg(long, default_value_t = 1.0)]
        tau_min: f64,
        #[arg(long, default_value_t = 1.499)]
        tau_max: f64,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        /// Directory receiving the two CSV files.
        #[arg(long, default_value = ".")]
        output: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the invariant suite.
    Verify {
        /// Also write the summary here.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Bound the bundled photonic example (projective measurements).
    Demo {
        #[arg(long)]
        numeric_ub: bool,
        #[command(flatten)]
        common: Common,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Schema(_) | Error::Range(_) | Error::Domain(_) => EXIT_PARSE,
        Error::Validation(_) => EXIT_VALIDATION,
        Error::Computation(_) => EXIT_NUMERIC,
        Error::Io(_) => EXIT_IO,
    }
}

fn report_options(projective: bool, numeric_ub: bool, common: &Common) -> ReportOptions {
    ReportOptions {
        projective,
        numeric_upper_bound: numeric_ub,
        tolerance: common.tol,
        seesaw: SeesawConfig::default().with_seed(common.seed),
    }
}

fn bound(input: &StatisticsInput, opts: &ReportOptions, output: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let report = assemble_report(input, opts)?;
    write!(out, "{}", report.summary())?;
    if let Some(path) = output {
        io::save_json(&report, path)?;
    }
    Ok(EXIT_OK)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Bound { input, output, projective, numeric_ub, common } => {
            let opts = report_options(projective, numeric_ub, &common);
            bound(&io::load(input)?, &opts, output.as_deref(), out)
        }
        Command::Demo { numeric_ub, common } => {
            let opts = report_options(true, numeric_ub, &common);
            bound(&io::parse(DEMO_SLICE)?, &opts, None, out)
        }
        Command::Simulate { gamma, angles, output } => {
            let m = MeasurementSet::in_plane([angles[0], angles[1]], [angles[2], angles[3]]);
            let table = simulate(&schmidt_state(gamma)?, &m)?;
            io::save_table(&table, &output)?;
            writeln!(out, "wrote {}", output.display())?;
            Ok(EXIT_OK)
        }
        Command::Optimize { tau, output, common } => {
            let peak = global_max_violation(tau, &SeesawConfig::default().with_seed(common.seed))?;
            writeln!(out, "tau          {tau}")?;
            writeln!(out, "gamma*       {:.8}", peak.gamma_star)?;
            writeln!(out, "concurrence  {:.8}", peak.concurrence())?;
            writeln!(out, "S_Q          {:.8}", peak.s_q)?;
            let m = &peak.measurements;
            for (label, n) in [("A0", m.alice[0]), ("A1", m.alice[1]), ("B0", m.bob[0]), ("B1", m.bob[1])] {
                writeln!(out, "{label} Bloch    ({:+.6}, {:+.6}, {:+.6})", n.x(), n.y(), n.z())?;
            }
            if let Some(path) = output {
                io::save_json(&peak, path)?;
            }
            Ok(EXIT_OK)
        }
        Command::Curves { tau_min, tau_max, grid, output, common } => {
            let taus = tau_grid(tau_min, tau_max, grid)?;
            let rows = compute_curves(&taus, &SeesawConfig::default().with_seed(common.seed))?;
            fs::create_dir_all(&output)?;
            let concurrence = output.join(CONCURRENCE_CSV);
            let violation = output.join(VIOLATION_CSV);
            write_concurrence_csv(&rows, fs::File::create(&concurrence)?)?;
            write_violation_csv(&rows, fs::File::create(&violation)?)?;
            writeln!(out, "wrote {} and {}", concurrence.display(), violation.display())?;
            Ok(EXIT_OK)
        }
        Command::Verify { output, common } => {
            let summary = run_suite(common.seed, common.tol)?;
            let text = summary.render();
            write!(out, "{text}")?;
            if let Some(path) = output {
                fs::write(path, &text)?;
            }
            Ok(if summary.passed() { EXIT_OK } else { EXIT_VALIDATION })
        }
    }
}
