//! Curve data behind the two figures: concurrence of the optimal and the
//! critical state versus τ, and the maximal violation versus τ next to its
//! analytic ceiling.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::optimizer::{analytic_violation_bound, critical_gamma_above, global_max_violation, SeesawConfig};
use crate::rng::derive_seed;
use crate::{TAU_CRITICAL_MES, TAU_MAX};

pub const CONCURRENCE_CSV: &str = "concurrence_vs_tau.csv";
pub const VIOLATION_CSV: &str = "violation_vs_tau.csv";

/// Significant digits written to CSV cells.
pub const CSV_DIGITS: usize = 9;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CurveRow {
    pub tau: f64,
    pub gamma_star: f64,
    /// `C(ψ*_τ) = sin 2γ*`
    pub c_optimal: f64,
    /// `C_cr(τ)`, defined from `τ = 1/√2 + 1/2` on.
    pub c_critical: Option<f64>,
    pub s_q: f64,
    /// Analytic pure-state ceiling evaluated at γ*.
    pub analytic_bound: f64,
}

/// `n` evenly spaced tilts on `[min, max] ⊂ [1, 3/2)`.
pub fn tau_grid(min: f64, max: f64, n: usize) -> Result<Vec<f64>> {
    if !(min >= 1.0 && max < TAU_MAX && min <= max) {
        return Err(Error::domain(format!("τ range [{min}, {max}] not inside [1, 3/2)")));
    }
    if n == 0 {
        return Err(Error::domain("curve needs at least one grid point"));
    }
    if n == 1 {
        return Ok(vec![min]);
    }
    Ok((0..n).map(|k| min + (max - min) * k as f64 / (n - 1) as f64).collect())
}

/// One row per τ. Row `i` uses the seed derived from `(cfg.rng_seed, i)`.
pub fn compute_curves(taus: &[f64], cfg: &SeesawConfig) -> Result<Vec<CurveRow>> {
    taus.par_iter()
        .enumerate()
        .map(|(i, &tau)| {
            let cfg = cfg.with_seed(derive_seed(cfg.rng_seed, i as u64));
            let peak = global_max_violation(tau, &cfg)?;
            let c_critical = if tau >= TAU_CRITICAL_MES {
                Some(critical_gamma_above(&peak, &cfg)?.c_cr)
            } else {
                None
            };
            Ok(CurveRow {
                tau,
                gamma_star: peak.gamma_star,
                c_optimal: peak.concurrence(),
                c_critical,
                s_q: peak.s_q,
                analytic_bound: analytic_violation_bound(peak.gamma_star, tau),
            })
        })
        .collect()
}

/// Decimal rendering with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

fn cell(x: f64) -> String {
    format_significant(x, CSV_DIGITS)
}

pub fn write_concurrence_csv<W: Write>(rows: &[CurveRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["tau", "c_optimal", "c_critical"]).map_err(csv_err)?;
    for r in rows {
        w.write_record([cell(r.tau), cell(r.c_optimal), r.c_critical.map(cell).unwrap_or_default()])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_violation_csv<W: Write>(rows: &[CurveRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(["tau", "s_q", "analytic_bound"]).map_err(csv_err)?;
    for r in rows {
        w.write_record([cell(r.tau), cell(r.s_q), cell(r.analytic_bound)]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
