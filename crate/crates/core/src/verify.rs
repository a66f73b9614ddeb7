//! The release-gate invariant suite behind `entbound verify`.
//!
//! Each check draws randomness from its own stream derived from the seed,
//! so the textual summary is byte-identical across runs.

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write as _;

use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::bell::{coefficients, coefficients_unbounded, evaluate_classical, evaluate_table, quantum_value};
use crate::bounds::{assemble_report, tau_obs, tau_obs_scan, ReportOptions};
use crate::error::Result;
use crate::io::StatisticsInput;
use crate::measurement::MeasurementSet;
use crate::optimizer::{analytic_violation_bound, seesaw_max_violation, verify_theorem1_qubit, SeesawConfig};
use crate::quantum::{
    concurrence, joint_probability, random_mixed_state, random_unitary, schmidt_state, Projector2x2, TwoQubitState,
};
use crate::rng::{self, derive_seed, Rng};
use crate::stats::{ch_slice, random_nonsignaling_table, simulate, validate, ChSlice, Verdict};
use crate::TAU_CRITICAL_MES;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(s, "{} checks, {} failed (seed {})", self.checks.len(), failed, self.seed);
        s
    }
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult { name, passed, detail }
}

type CheckFn = fn(&mut Rng, f64) -> Result<CheckResult>;

/// Runs every check. `tol` is the validation tolerance simulated tables must meet.
pub fn run_suite(seed: u64, tol: f64) -> Result<VerifySummary> {
    let suite: [CheckFn; 18] = [
        coefficient_table,
        coefficient_domain,
        decomposition_identity,
        nonpositivity_at_three_halves,
        affine_in_tau,
        quantum_classical_consistency,
        simulated_tables_validate,
        projectors,
        probability_normalization,
        concurrence_schmidt_grid,
        concurrence_local_unitary,
        concurrence_werner,
        theorem1_grid,
        analytic_dominance,
        bracketing,
        marginal_formula,
        worked_example,
        tau_obs_cross_check,
    ];
    let checks = suite
        .par_iter()
        .enumerate()
        .map(|(i, f)| {
            let mut rng = rng::stream(derive_seed(seed, i as u64), 0);
            f(&mut rng, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifySummary { seed, checks })
}

fn coefficient_table(_: &mut Rng, _: f64) -> Result<CheckResult> {
    let c1 = coefficients(1.0)?;
    let c = coefficients(1.25)?;
    let ok = c1.beta(0, 1, 0, 0) == 0.0
        && c1.beta(0, 1, 0, 1) == -1.0
        && c1.beta(0, 0, 0, 0) == 1.0
        && c1.beta(1, 1, 0, 0) == -1.0
        && c.beta(0, 1, 0, 0) == -0.25
        && c.beta(1, 0, 1, 0) == -1.25
        && c.table().iter().filter(|b| **b == 0.0).count() == 10;
    Ok(check("coefficient_table", ok, "β at τ = 1 and τ = 1.25".into()))
}

fn coefficient_domain(_: &mut Rng, _: f64) -> Result<CheckResult> {
    let rejected = coefficients(1.6).is_err() && coefficients(0.9).is_err();
    let extended = coefficients_unbounded(1.6).is_ok();
    Ok(check(
        "coefficient_domain",
        rejected && extended,
        "τ = 1.6 and τ = 0.9 rejected, τ = 1.6 admitted for validation".into(),
    ))
}

fn decomposition_identity(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let t = random_nonsignaling_table(rng);
        let tau = rng.random_range(1.0..1.5);
        let direct = evaluate_table(&t, &coefficients(tau)?).value;
        let split = evaluate_classical(&ch_slice(&t), tau).value;
        worst = worst.max((direct - split).abs());
    }
    Ok(check("decomposition_identity", worst <= 1e-12, format!("max residual {worst:.3e} over 1000 tables")))
}

fn nonpositivity_at_three_halves(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let coeffs = coefficients_unbounded(1.5)?;
    let worst = (0..1000)
        .map(|_| evaluate_table(&random_nonsignaling_table(rng), &coeffs).value)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(check("nonpositivity_at_three_halves", worst <= 1e-12, format!("max S at τ = 3/2: {worst:.3e}")))
}

fn affine_in_tau(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let s = ch_slice(&random_nonsignaling_table(rng));
        let slope = (evaluate_classical(&s, 1.4).value - evaluate_classical(&s, 1.1).value) / 0.3;
        worst = worst.max((slope + s.m_a0 + s.m_b0).abs());
    }
    Ok(check("affine_in_tau", worst <= 1e-12, format!("max slope residual {worst:.3e}")))
}

fn quantum_classical_consistency(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let rho = random_mixed_state(rng);
        let m = MeasurementSet::random(rng);
        let tau = rng.random_range(1.0..1.5);
        let q = quantum_value(&rho, &m, &coefficients(tau)?)?.value;
        let c = evaluate_classical(&ch_slice(&simulate(&rho, &m)?), tau).value;
        worst = worst.max((q - c).abs());
    }
    Ok(check("quantum_classical_consistency", worst <= 1e-12, format!("max residual {worst:.3e}")))
}

fn simulated_tables_validate(rng: &mut Rng, tol: f64) -> Result<CheckResult> {
    let mut failures = 0;
    for _ in 0..200 {
        let t = simulate(&random_mixed_state(rng), &MeasurementSet::random(rng))?;
        if validate(&t, tol)?.verdict != Verdict::Pass {
            failures += 1;
        }
    }
    Ok(check("simulated_tables_validate", failures == 0, format!("{failures} of 200 failed at tol {tol:.1e}")))
}

fn projectors(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let mut bad = 0;
    for _ in 0..200 {
        let m = MeasurementSet::random(rng);
        for a in 0..2 {
            if Projector2x2::new(*m.alice_projector(0, a)?.matrix()).is_err() {
                bad += 1;
            }
        }
    }
    Ok(check("projector_properties", bad == 0, format!("{bad} of 400 not idempotent Hermitian rank-1")))
}

fn probability_normalization(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let rho = random_mixed_state(rng);
        let m = MeasurementSet::random(rng);
        let mut total = 0.0;
        for a in 0..2 {
            for b in 0..2 {
                total += joint_probability(&rho, &m.alice_projector(1, a)?, &m.bob_projector(0, b)?);
            }
        }
        worst = worst.max((total - 1.0).abs());
    }
    Ok(check("probability_normalization", worst <= 1e-12, format!("max residual {worst:.3e}")))
}

fn concurrence_schmidt_grid(_: &mut Rng, _: f64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for k in 0..50 {
        let gamma = FRAC_PI_4 * k as f64 / 49.0;
        worst = worst.max((concurrence(&schmidt_state(gamma)?)? - (2.0 * gamma).sin()).abs());
    }
    Ok(check("concurrence_schmidt_grid", worst <= 1e-9, format!("max |C − sin 2γ| {worst:.3e}")))
}

fn concurrence_local_unitary(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let rho = random_mixed_state(rng);
        let rotated = rho.locally_rotated(&random_unitary(rng), &random_unitary(rng))?;
        worst = worst.max((concurrence(&rho)? - concurrence(&rotated)?).abs());
    }
    Ok(check("concurrence_local_unitary", worst <= 1e-9, format!("max change {worst:.3e}")))
}

fn concurrence_werner(_: &mut Rng, _: f64) -> Result<CheckResult> {
    let c = concurrence(&TwoQubitState::werner(0.5)?)?;
    Ok(check("concurrence_werner", (c - 0.25).abs() <= 1e-12, format!("C = {c:.12}")))
}

fn theorem1_grid(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let taus: Vec<f64> = (0..30).map(|k| 1.2072 + (1.499 - 1.2072) * k as f64 / 29.0).collect();
    let report = verify_theorem1_qubit(&taus, 100, &SeesawConfig::default(), rng.random())?;
    let worst_v = report.rows.iter().map(|r| r.max_violation).fold(f64::NEG_INFINITY, f64::max);
    let worst_i = report.rows.iter().map(|r| r.identity_residual).fold(0.0, f64::max);
    let mut detail = format!("30 tilts, max violation {worst_v:.3e}, max identity residual {worst_i:.3e}");
    if let Some(r) = report.failures().next() {
        let _ = write!(detail, "; first failure at τ = {:.6}", r.tau);
    }
    Ok(check("theorem1_maximally_entangled", report.passed, detail))
}

fn analytic_dominance(_: &mut Rng, _: f64) -> Result<CheckResult> {
    let cfg = SeesawConfig::default();
    let points: Vec<(f64, f64)> = (0..20)
        .flat_map(|i| (0..20).map(move |j| (FRAC_PI_4 * i as f64 / 19.0, 1.0 + 0.49 * j as f64 / 19.0)))
        .collect();
    let excesses = points
        .par_iter()
        .map(|&(gamma, tau)| {
            let v = seesaw_max_violation(&schmidt_state(gamma)?, &coefficients(tau)?, &cfg)?.value.value;
            Ok(v - analytic_violation_bound(gamma, tau))
        })
        .collect::<Result<Vec<f64>>>()?;
    let worst = excesses.into_iter().fold(f64::NEG_INFINITY, f64::max);
    Ok(check("pure_state_ceiling", worst <= 1e-9, format!("max excess over 20×20 grid {worst:.3e}")))
}

/// Worst violations of `lower ≤ sin 2γ ≤ upper` over random simulated experiments.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct BracketingStats {
    pub trials: usize,
    pub with_tau_obs: usize,
    pub failures: usize,
    pub worst_excess: f64,
}

/// Simulates `schmidt_state(γ)` under random measurements and checks that
/// every reported bound brackets `sin 2γ` within `slack`.
pub fn bracketing_trials<F>(trials: usize, rng: &mut Rng, slack: f64, mut measurements: F) -> Result<BracketingStats>
where
    F: FnMut(f64, &mut Rng) -> Result<MeasurementSet>,
{
    let opts = ReportOptions { projective: true, ..ReportOptions::default() };
    let mut stats = BracketingStats { trials, worst_excess: f64::NEG_INFINITY, ..Default::default() };
    for _ in 0..trials {
        let gamma = rng.random_range(0.0..=FRAC_PI_4);
        let m = measurements(gamma, rng)?;
        let truth = (2.0 * gamma).sin();
        let report = assemble_report(&StatisticsInput::Full(simulate(&schmidt_state(gamma)?, &m)?), &opts)?;
        let mut excess = report.lower_bound - truth;
        if report.tau_obs.is_some() {
            stats.with_tau_obs += 1;
            excess = excess.max(truth - report.upper_bound_analytic);
        }
        if let Some(mb) = report.upper_bound_marginal {
            excess = excess.max(truth - mb);
        }
        if excess > slack {
            stats.failures += 1;
        }
        stats.worst_excess = stats.worst_excess.max(excess);
    }
    Ok(stats)
}

fn bracketing(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    // Alternate random settings with see-saw optima at a random tilt, so the
    // upper bounds are exercised as well as the lower one.
    let cfg = SeesawConfig { restarts: 2, ..SeesawConfig::default() };
    let mut trial = 0usize;
    let s = bracketing_trials(200, rng, 1e-6, |gamma, r| {
        trial += 1;
        if trial % 2 == 1 {
            return Ok(MeasurementSet::random(r));
        }
        let tau = r.random_range(1.0..1.45);
        Ok(seesaw_max_violation(&schmidt_state(gamma)?, &coefficients(tau)?, &cfg)?.measurements)
    })?;
    Ok(check(
        "bracketing_soundness",
        s.failures == 0,
        format!("{} failures in {} trials ({} with τ_obs), worst excess {:.3e}", s.failures, s.trials, s.with_tau_obs, s.worst_excess),
    ))
}

fn marginal_formula(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut outside = 0;
    for _ in 0..200 {
        let gamma = rng.random_range(0.0..=FRAC_PI_4);
        let m = MeasurementSet::random(rng);
        let s = ch_slice(&simulate(&schmidt_state(gamma)?, &m)?);
        let c2 = (2.0 * gamma).cos();
        let expected = [
            0.5 * (1.0 + m.alice[0].z() * c2),
            0.5 * (1.0 + m.alice[1].z() * c2),
            0.5 * (1.0 + m.bob[0].z() * c2),
            0.5 * (1.0 + m.bob[1].z() * c2),
        ];
        for (got, want) in s.marginals().iter().zip(expected) {
            worst = worst.max((got - want).abs());
            if *got < 0.5 * (1.0 - c2) - 1e-12 || *got > 0.5 * (1.0 + c2) + 1e-12 {
                outside += 1;
            }
        }
    }
    Ok(check(
        "marginal_formula",
        worst <= 1e-12 && outside == 0,
        format!("max residual {worst:.3e}, {outside} marginals outside the admissible interval"),
    ))
}

/// The bundled photonic slice.
pub fn worked_example_slice() -> ChSlice {
    match crate::io::parse(include_str!("../data/ch_slice_example.json")) {
        Ok(StatisticsInput::Slice(s)) => s,
        _ => unreachable!("bundled example is a valid slice"),
    }
}

fn worked_example(_: &mut Rng, _: f64) -> Result<CheckResult> {
    let opts = ReportOptions { projective: true, ..ReportOptions::default() };
    let r = assemble_report(&StatisticsInput::Slice(worked_example_slice()), &opts)?;
    let ok = (r.s_ch_obs - 0.1826).abs() <= 1e-4
        && (r.lower_bound - 0.9297).abs() <= 1e-3
        && r.tau_obs.is_some_and(|t| (t - 1.2102).abs() <= 1e-3)
        && (r.upper_bound_analytic - 0.9999).abs() <= 1e-4
        && r.upper_bound_marginal.is_some_and(|m| (m - 0.9806).abs() <= 5e-4);
    Ok(check(
        "worked_example",
        ok,
        format!(
            "S_CH {:.4}, lower {:.4}, τ_obs {:.4}, analytic {:.4}, marginal {:.4}",
            r.s_ch_obs,
            r.lower_bound,
            r.tau_obs.unwrap_or(f64::NAN),
            r.upper_bound_analytic,
            r.upper_bound_marginal.unwrap_or(f64::NAN)
        ),
    ))
}

fn tau_obs_cross_check(rng: &mut Rng, _: f64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    let mut mismatched = 0;
    let mut compared = 0;
    let cfg = SeesawConfig { restarts: 2, ..SeesawConfig::default() };
    for k in 0..20 {
        let gamma = rng.random_range(0.2..=FRAC_PI_4);
        let tau = rng.random_range(TAU_CRITICAL_MES..1.45);
        let rho = schmidt_state(gamma)?;
        let m = if k == 0 {
            MeasurementSet::chsh_optimal()
        } else {
            seesaw_max_violation(&rho, &coefficients(tau)?, &cfg)?.measurements
        };
        let s = ch_slice(&simulate(&rho, &m)?);
        match (tau_obs(&s)?, tau_obs_scan(&s, 1e-6)) {
            (Some(a), Some(b)) => {
                compared += 1;
                worst = worst.max((a - b).abs());
            }
            (None, None) => {}
            _ => mismatched += 1,
        }
    }
    Ok(check(
        "tau_obs_scan_agreement",
        worst <= 1e-6 && mismatched == 0,
        format!("{compared} slices compared, max difference {worst:.3e}, {mismatched} presence mismatches"),
    ))
}
