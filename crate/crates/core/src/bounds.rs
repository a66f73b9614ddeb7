//! Concurrence bounds from observed statistics.
//!
//! | bound | input | assumption |
//! |-------|-------|------------|
//! | lower, [`lower_bound_concurrence`] | `S^(CH)_Obs` | two qubits |
//! | analytic upper, [`upper_bound_analytic`] | `τ_Obs` | two qubits |
//! | numeric upper, [`upper_bound_numeric`] | `τ_Obs` | two qubits |
//! | marginal upper, [`upper_bound_marginal`] | marginals | two qubits, projective |

use std::fmt::Write as _;

use serde::Serialize;

use crate::bell::{ch_value, evaluate_classical};
use crate::error::{Error, Result};
use crate::io::StatisticsInput;
use crate::optimizer::{critical_gamma, SeesawConfig};
use crate::stats::{ch_slice, validate, validate_slice, ChSlice, ValidationReport, Verdict, DEFAULT_TOLERANCE};
use crate::{TAU_CRITICAL_MES, TAU_MAX};

/// Slack allowed between the lower bound and the smallest upper bound.
pub const BRACKET_SLACK: f64 = 1e-6;

fn clamp_unit(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// `√((2 S + 1)² − 1)` before clamping; zero for `S ≤ 0`.
pub fn lower_bound_raw(s_ch_obs: f64) -> f64 {
    if s_ch_obs <= 0.0 {
        return 0.0;
    }
    ((2.0 * s_ch_obs + 1.0).powi(2) - 1.0).sqrt()
}

pub fn lower_bound_concurrence(s_ch_obs: f64) -> f64 {
    clamp_unit(lower_bound_raw(s_ch_obs))
}

/// Root of the affine map `τ ↦ S^(τ)_Obs`, `1 + S^(CH) / (p_A(0|0) + p_B(0|0))`,
/// when the slice violates CH.
pub fn tau_root(slice: &ChSlice) -> Result<Option<f64>> {
    let s = ch_value(slice);
    if s <= 0.0 {
        return Ok(None);
    }
    let weight = slice.m_a0 + slice.m_b0;
    if weight <= 0.0 {
        return Err(Error::domain(
            "CH violation with vanishing marginals p_A(0|0) + p_B(0|0) = 0 is impossible for valid data",
        ));
    }
    Ok(Some(1.0 + s / weight))
}

/// `sup{τ ∈ [1/√2 + 1/2, 3/2] : S^(τ)_Obs > 0}`, or `None` when the set is empty.
pub fn tau_obs(slice: &ChSlice) -> Result<Option<f64>> {
    Ok(tau_root(slice)?
        .filter(|root| *root >= TAU_CRITICAL_MES)
        .map(|root| root.min(TAU_MAX)))
}

/// Brute-force version of [`tau_obs`]: the last grid point in
/// `[1/√2 + 1/2, 3/2]` with positive `S^(τ)_Obs`.
pub fn tau_obs_scan(slice: &ChSlice, step: f64) -> Option<f64> {
    let n = ((TAU_MAX - TAU_CRITICAL_MES) / step).ceil() as usize;
    (0..=n)
        .map(|k| (TAU_CRITICAL_MES + k as f64 * step).min(TAU_MAX))
        .take_while(|tau| evaluate_classical(slice, *tau).value > 0.0)
        .last()
}

/// `C_τ = 2√(2(τ−1)(2τ−1)(3−2τ)) / (5 − 8τ + 4τ²)`.
pub fn upper_bound_analytic(tau: f64) -> Result<f64> {
    if !(TAU_CRITICAL_MES - 1e-12..=TAU_MAX).contains(&tau) {
        return Err(Error::domain(format!("analytic bound defined for τ in [1/√2 + 1/2, 3/2], got {tau}")));
    }
    let radicand = (2.0 * (tau - 1.0) * (2.0 * tau - 1.0) * (3.0 - 2.0 * tau)).max(0.0);
    Ok(clamp_unit(2.0 * radicand.sqrt() / (5.0 - 8.0 * tau + 4.0 * tau * tau)))
}

/// Concurrence of the critical Schmidt state at τ, from the optimizer.
pub fn upper_bound_numeric(tau: f64, cfg: &SeesawConfig) -> Result<f64> {
    Ok(critical_gamma(tau, cfg)?.c_cr)
}

/// `min_m √(1 − (1 − 2m)²)` over the four observed marginals; only sound
/// for rank-1 projective measurements, hence `None` without the flag.
pub fn upper_bound_marginal(slice: &ChSlice, projective: bool) -> Option<f64> {
    projective.then(|| {
        slice
            .marginals()
            .iter()
            .map(|m| clamp_unit((1.0 - (1.0 - 2.0 * m).powi(2)).max(0.0).sqrt()))
            .fold(1.0, f64::min)
    })
}

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    pub projective: bool,
    pub numeric_upper_bound: bool,
    pub tolerance: f64,
    pub seesaw: SeesawConfig,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            projective: false,
            numeric_upper_bound: false,
            tolerance: DEFAULT_TOLERANCE,
            seesaw: SeesawConfig::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Assumptions {
    pub two_qubit: bool,
    pub projective: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub validation: ValidationReport,
    /// Unclamped affine root of `S^(τ)_Obs`, when CH is violated.
    pub tau_root: Option<f64>,
    /// Quantities that left `[0, 1]` before clamping, with their raw values.
    pub clamped: Vec<(String, f64)>,
    /// Lower bound exceeds the smallest upper bound by more than the slack:
    /// no two-qubit state under the stated assumptions fits the data.
    pub inconsistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub input: ChSlice,
    pub s_ch_obs: f64,
    pub lower_bound: f64,
    pub tau_obs: Option<f64>,
    pub upper_bound_analytic: f64,
    pub upper_bound_numeric: Option<f64>,
    pub upper_bound_marginal: Option<f64>,
    pub assumptions: Assumptions,
    pub diagnostics: Diagnostics,
    /// Why each absent or trivial bound is absent or trivial.
    pub notes: Vec<String>,
}

impl BoundReport {
    /// Smallest upper bound present.
    pub fn tightest_upper_bound(&self) -> f64 {
        [Some(self.upper_bound_analytic), self.upper_bound_numeric, self.upper_bound_marginal]
            .into_iter()
            .flatten()
            .fold(1.0, f64::min)
    }

    pub fn summary(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "absent".to_string(), |v| format!("{v:.4}"));
        let mut s = String::new();
        let _ = writeln!(s, "S_CH_obs              {:.4}", self.s_ch_obs);
        let _ = writeln!(s, "lower bound           {:.4}", self.lower_bound);
        let _ = writeln!(s, "tau_obs               {}", opt(self.tau_obs));
        let _ = writeln!(s, "upper bound analytic  {:.4}", self.upper_bound_analytic);
        let _ = writeln!(s, "upper bound numeric   {}", opt(self.upper_bound_numeric));
        let _ = writeln!(s, "upper bound marginal  {}", opt(self.upper_bound_marginal));
        let _ = writeln!(s, "validation            {}", self.diagnostics.validation);
        for note in &self.notes {
            let _ = writeln!(s, "note: {note}");
        }
        s
    }
}

/// Validates the input and computes every bound the options allow.
pub fn assemble_report(input: &StatisticsInput, opts: &ReportOptions) -> Result<BoundReport> {
    let (slice, validation) = match input {
        StatisticsInput::Full(table) => (ch_slice(table), validate(table, opts.tolerance)?),
        StatisticsInput::Slice(slice) => (*slice, validate_slice(slice, opts.tolerance)?),
    };
    if validation.verdict == Verdict::Fail {
        return Err(Error::Validation(Box::new(validation)));
    }

    let mut notes = Vec::new();
    let mut clamped = Vec::new();
    if validation.verdict == Verdict::Warn {
        notes.push(format!("validation residuals within the warn band: {validation}"));
    }

    let s_ch_obs = ch_value(&slice);
    let raw_lower = lower_bound_raw(s_ch_obs);
    if raw_lower > 1.0 {
        clamped.push(("lower_bound".to_string(), raw_lower));
    }
    let lower_bound = clamp_unit(raw_lower);

    let root = tau_root(&slice)?;
    let tau_obs = tau_obs(&slice)?;
    if let Some(r) = root.filter(|r| *r > TAU_MAX) {
        clamped.push(("tau_obs".to_string(), r));
    }

    let (upper_bound_analytic, upper_bound_numeric) = match tau_obs {
        Some(tau) => {
            let numeric = if !opts.numeric_upper_bound {
                notes.push("numeric upper bound not requested".into());
                None
            } else if tau >= TAU_MAX {
                Some(0.0)
            } else {
                Some(upper_bound_numeric(tau, &opts.seesaw)?)
            };
            (upper_bound_analytic(tau)?, numeric)
        }
        None => {
            if root.is_some() {
                notes.push("violation does not persist to τ_c(π/4) = 1/√2 + 1/2; upper bounds set to 1".into());
            } else {
                notes.push("no violation of the CH inequality; lower bound is trivial and upper bounds set to 1".into());
            }
            (1.0, opts.numeric_upper_bound.then_some(1.0))
        }
    };

    let upper_bound_marginal = upper_bound_marginal(&slice, opts.projective);
    if !opts.projective {
        notes.push("marginal bound needs projective measurements (--projective)".into());
    }

    let mut report = BoundReport {
        input: slice,
        s_ch_obs,
        lower_bound,
        tau_obs,
        upper_bound_analytic,
        upper_bound_numeric,
        upper_bound_marginal,
        assumptions: Assumptions { two_qubit: true, projective: opts.projective },
        diagnostics: Diagnostics { validation, tau_root: root, clamped, inconsistent: false },
        notes,
    };
    if report.lower_bound > report.tightest_upper_bound() + BRACKET_SLACK {
        report.diagnostics.inconsistent = true;
        report
            .notes
            .push("lower bound exceeds an upper bound: no two-qubit state under these assumptions fits the data".into());
    }
    Ok(report)
}
