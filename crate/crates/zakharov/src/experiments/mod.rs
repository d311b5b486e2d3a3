//! Experiment harness: convergence sweeps against a Runge-Kutta reference,
//! step-size instability scans across the d·τ·K² = 2π threshold, and an
//! equivalence audit of the transformed recursion.
//!
//! Every experiment starts from the same deterministic power-law data
//! (ψ, u, u̇) with regularities (s+σ+2, s+σ+1, s+σ), so runs are reproducible
//! without touching an RNG. Results come back as plain structs; when
//! `output_dir` is set, CSV files and a metadata JSON are written as well.

pub mod io;

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rk4::{integrate_reference, measure_errors, ReferenceConfig};
use crate::spectral::Grid;
use crate::split::{
    cfl_check, lie_trotter_step, power_law_state, v_pre, StepperConfig, ZakharovState,
    DEFAULT_CFL_CONSTANT,
};
use crate::transformed::{
    bootstrap, potential, potential_rate, recover_psi_poisson, step_transformed,
};

/// Shared knobs for all experiments. Fields are public; fill what the
/// experiment needs and leave the rest at `RunConfig::new` defaults.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub dim: usize,
    /// K: modes per axis are {−K, …, K−1}.
    pub modes: usize,
    /// Step sizes to run; empty means "derive a default grid".
    pub taus: Vec<f64>,
    pub t0: f64,
    pub t_end: f64,
    /// Base Sobolev index of the convergence theory.
    pub s: f64,
    /// Extra regularity of the initial data above the base index.
    pub sigma: f64,
    pub cfl_constant: f64,
    pub enforce_cfl: bool,
    /// Recorded in metadata for provenance; the power-law data is
    /// deterministic and does not consume it.
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_ref: Option<f64>,
    #[serde(skip)]
    pub output_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(dim: usize, modes: usize) -> RunConfig {
        RunConfig {
            dim,
            modes,
            taus: Vec::new(),
            t0: 0.0,
            t_end: 0.1,
            s: 1.0,
            sigma: 2.0,
            cfl_constant: DEFAULT_CFL_CONSTANT,
            enforce_cfl: true,
            seed: 0,
            tau_ref: None,
            output_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dim) {
            return Err(Error::Invalid(format!(
                "dimension must be 1, 2, or 3, got {}",
                self.dim
            )));
        }
        if self.modes < 2 || !self.modes.is_power_of_two() {
            return Err(Error::Invalid(format!(
                "modes per axis must be a power of two ≥ 2, got {}",
                self.modes
            )));
        }
        if !self.t0.is_finite() || !self.t_end.is_finite() || self.t_end <= self.t0 {
            return Err(Error::Invalid(format!(
                "time span must be finite and nonempty, got [{}, {}]",
                self.t0, self.t_end
            )));
        }
        if !(self.s.is_finite() && self.s >= 0.0 && self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::Invalid(format!(
                "Sobolev indices must be finite and nonnegative, got s = {}, sigma = {}",
                self.s, self.sigma
            )));
        }
        if !(self.cfl_constant > 0.0 && self.cfl_constant < 2.0 * std::f64::consts::PI) {
            return Err(Error::Invalid(format!(
                "cfl_constant must lie in (0, 2π), got {}",
                self.cfl_constant
            )));
        }
        for &tau in &self.taus {
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(Error::Invalid(format!(
                    "step sizes must be positive and finite, got {tau}"
                )));
            }
        }
        if let Some(tau_ref) = self.tau_ref {
            if !(tau_ref > 0.0 && tau_ref.is_finite()) {
                return Err(Error::Invalid(format!(
                    "reference step must be positive and finite, got {tau_ref}"
                )));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.dim, self.modes)
    }

    /// Largest admitted step: cfl_constant / (d·K²).
    pub fn cfl_limit(&self) -> f64 {
        let k = self.modes as f64;
        self.cfl_constant / (self.dim as f64 * k * k)
    }

    /// Power-law initial data at t0 with the regularities the convergence
    /// theory assumes.
    pub fn initial_state(&self, grid: &Grid) -> ZakharovState {
        let base = self.s + self.sigma;
        let mut state = power_law_state(grid, base + 2.0, base + 1.0, base);
        state.time = self.t0;
        state
    }

    /// Geometric grid of step sizes, 12 per decade, spanning 1.5 decades
    /// downward from the admitted limit. Each target is snapped to an integer
    /// number of steps across [t0, t_end] by rounding the count up, so no
    /// snapped step exceeds the limit.
    pub fn default_tau_grid(&self) -> Vec<f64> {
        let span = self.t_end - self.t0;
        let limit = self.cfl_limit();
        let mut taus: Vec<f64> = Vec::new();
        for k in 0..=18 {
            let target = limit * 10f64.powf(-(k as f64) / 12.0);
            let n = (span / target).ceil().max(1.0);
            let tau = span / n;
            if taus.last().is_none_or(|&prev| tau < prev) {
                taus.push(tau);
            }
        }
        taus
    }

    fn resolved_taus(&self) -> Vec<f64> {
        if self.taus.is_empty() {
            self.default_tau_grid()
        } else {
            self.taus.clone()
        }
    }

    fn stepper(&self, tau: f64) -> Result<StepperConfig> {
        let stepper = StepperConfig::new(tau)?.with_cfl_constant(self.cfl_constant)?;
        Ok(if self.enforce_cfl {
            stepper
        } else {
            stepper.warn_only()
        })
    }
}

/// One row of a convergence sweep.
#[derive(Clone, Copy, Debug)]
pub struct ConvergenceRecord {
    pub tau: f64,
    pub modes: usize,
    pub e_psi: f64,
    pub e_u: f64,
    pub e_udot: f64,
    pub wall_time_s: f64,
}

#[derive(Clone, Debug)]
pub struct ConvergenceOutcome {
    pub records: Vec<ConvergenceRecord>,
    pub slope_psi: f64,
    pub slope_u: f64,
    pub slope_udot: f64,
    /// Worst d·τ·K² over the sweep and whether it stayed within the constant.
    pub cfl_ratio: f64,
    pub cfl_satisfied: bool,
}

/// Least-squares slope of ln y against ln x, ignoring non-positive or
/// non-finite samples. NaN when fewer than two usable points remain.
pub fn fit_loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(&x, &y)| x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(&x, &y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    sxy / sxx
}

/// Splitting error against one shared Runge-Kutta reference, for every step
/// size in the sweep. Each step size is snapped to divide the time span
/// exactly so the comparison happens at the same final time.
pub fn run_convergence(config: &RunConfig) -> Result<ConvergenceOutcome> {
    config.validate()?;
    let grid = config.grid()?;
    let taus = config.resolved_taus();
    if taus.is_empty() {
        return Err(Error::Invalid("no step sizes to run".into()));
    }
    let span = config.t_end - config.t0;
    let tau_min = taus.iter().cloned().fold(f64::INFINITY, f64::min);
    let tau_ref = config
        .tau_ref
        .unwrap_or_else(|| 1e-7f64.min(tau_min / 100.0));
    if tau_ref > tau_min / 50.0 {
        return Err(Error::Invalid(format!(
            "reference step {tau_ref} must be at least 50x finer than the \
             finest splitting step {tau_min}"
        )));
    }

    let state0 = config.initial_state(&grid);
    let reference = integrate_reference(&state0, &ReferenceConfig::new(tau_ref, config.t_end)?)?;

    let mut records = Vec::with_capacity(taus.len());
    let mut worst_ratio = 0.0f64;
    for &tau in &taus {
        let n = (span / tau).round().max(1.0);
        let tau_used = span / n;
        let stepper = config.stepper(tau_used)?;
        worst_ratio = worst_ratio.max(cfl_check(&grid, &stepper).ratio);
        let started = Instant::now();
        let mut current = state0.clone();
        for i in 1..=n as usize {
            current = lie_trotter_step(&current, &stepper)?;
            current.time = config.t0 + i as f64 * tau_used;
        }
        let wall_time_s = started.elapsed().as_secs_f64();
        let err = measure_errors(&current, &reference, config.s)?;
        records.push(ConvergenceRecord {
            tau: tau_used,
            modes: config.modes,
            e_psi: err.e_psi,
            e_u: err.e_u,
            e_udot: err.e_udot,
            wall_time_s,
        });
    }

    let xs: Vec<f64> = records.iter().map(|r| r.tau).collect();
    let outcome = ConvergenceOutcome {
        slope_psi: fit_loglog_slope(&xs, &records.iter().map(|r| r.e_psi).collect::<Vec<_>>()),
        slope_u: fit_loglog_slope(&xs, &records.iter().map(|r| r.e_u).collect::<Vec<_>>()),
        slope_udot: fit_loglog_slope(&xs, &records.iter().map(|r| r.e_udot).collect::<Vec<_>>()),
        cfl_ratio: worst_ratio,
        cfl_satisfied: worst_ratio <= config.cfl_constant,
        records,
    };
    if let Some(dir) = &config.output_dir {
        ensure_dir(dir)?;
        io::write_convergence_csv(&dir.join("convergence.csv"), &outcome.records)?;
        io::write_run_metadata(
            &dir.join("metadata.json"),
            config,
            outcome.cfl_ratio,
            outcome.cfl_satisfied,
        )?;
    }
    Ok(outcome)
}

/// Norms sampled along a run: ψ in H^{s+σ+2}, u in H^{s+σ+1}, u̇ in H^{s+σ}.
#[derive(Clone, Copy, Debug)]
pub struct NormSample {
    pub t: f64,
    pub n_psi: f64,
    pub n_u: f64,
    pub n_udot: f64,
}

/// One step size of an instability scan.
#[derive(Clone, Debug)]
pub struct ScanCase {
    pub tau: f64,
    /// d·τ·K², compared against the hard 2π threshold (not the configured
    /// safety constant): the scan classifies stability, not policy.
    pub ratio: f64,
    pub compliant: bool,
    pub steps: usize,
    /// Norm trace starting at t0; truncated early if the run left f64 range.
    pub trace: Vec<NormSample>,
    pub blowup_step: Option<usize>,
    /// Last finite state reached (final state when no blow-up occurred).
    pub final_state: ZakharovState,
}

#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub cases: Vec<ScanCase>,
}

fn norm_sample(state: &ZakharovState, base: f64) -> NormSample {
    NormSample {
        t: state.time,
        n_psi: state.psi.norm_sobolev(base + 2.0),
        n_u: state.u.norm_sobolev(base + 1.0),
        n_udot: state.udot.norm_sobolev(base),
    }
}

/// March n steps, sampling norms after each one; a numeric blow-up truncates
/// the trace instead of failing the run.
fn march_with_trace(
    state0: &ZakharovState,
    stepper: &StepperConfig,
    n: usize,
    t0: f64,
    base: f64,
) -> Result<(ZakharovState, Vec<NormSample>, Option<usize>)> {
    let mut trace = Vec::with_capacity(n + 1);
    trace.push(norm_sample(state0, base));
    let mut current = state0.clone();
    for i in 1..=n {
        match lie_trotter_step(&current, stepper) {
            Ok(mut next) => {
                next.time = t0 + i as f64 * stepper.tau;
                trace.push(norm_sample(&next, base));
                current = next;
            }
            Err(Error::NumericBlowup { step, .. }) => {
                return Ok((current, trace, Some(step)));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((current, trace, None))
}

impl RunConfig {
    /// Scan defaults: two step sizes tightly bracketing the 2π threshold and
    /// two a decade away on either side. At the reference resolution
    /// (d = 1, K = 2⁸, threshold ≈ 9.587e-5) these are the round values
    /// 9.5e-6, 9.5e-5, 9.7e-5, 9.7e-4; elsewhere the same relative spread.
    pub fn default_scan_taus(&self) -> Vec<f64> {
        if self.dim == 1 && self.modes == 256 {
            vec![9.5e-6, 9.5e-5, 9.7e-5, 9.7e-4]
        } else {
            let k = self.modes as f64;
            let hard = 2.0 * std::f64::consts::PI / (self.dim as f64 * k * k);
            [0.1, 0.99, 1.01, 10.0].iter().map(|m| m * hard).collect()
        }
    }
}

/// Run each step size to t_end with norm traces and final spectra. The
/// stepper never refuses a violating step here — watching the instability is
/// the point — but every case is classified against the 2π threshold.
pub fn run_cfl_scan(config: &RunConfig) -> Result<ScanOutcome> {
    config.validate()?;
    let grid = config.grid()?;
    let taus = if config.taus.is_empty() {
        config.default_scan_taus()
    } else {
        config.taus.clone()
    };
    let state0 = config.initial_state(&grid);
    let base = config.s + config.sigma;
    let span = config.t_end - config.t0;
    let hard = 2.0 * std::f64::consts::PI;

    if let Some(dir) = &config.output_dir {
        ensure_dir(dir)?;
    }
    let mut cases = Vec::with_capacity(taus.len());
    let mut worst_ratio = 0.0f64;
    for &tau in &taus {
        let stepper = StepperConfig::new(tau)?
            .with_cfl_constant(config.cfl_constant)?
            .warn_only();
        let n = (span / tau).round().max(1.0) as usize;
        let (final_state, trace, blowup_step) =
            march_with_trace(&state0, &stepper, n, config.t0, base)?;
        let k = config.modes as f64;
        let ratio = config.dim as f64 * tau * k * k;
        worst_ratio = worst_ratio.max(ratio);
        if let Some(dir) = &config.output_dir {
            io::write_norms_csv(&dir.join(format!("norms_tau{tau:e}.csv")), &trace)?;
            io::write_spectrum_csv(
                &dir.join(format!("spectrum_tau{tau:e}.csv")),
                &final_state.psi,
            )?;
        }
        cases.push(ScanCase {
            tau,
            ratio,
            compliant: ratio <= hard,
            steps: n,
            trace,
            blowup_step,
            final_state,
        });
    }
    if let Some(dir) = &config.output_dir {
        io::write_run_metadata(
            &dir.join("metadata.json"),
            config,
            worst_ratio,
            worst_ratio <= config.cfl_constant,
        )?;
    }
    Ok(ScanOutcome { cases })
}

/// Single run at the first configured step size, honoring the configured
/// enforcement policy, with the same trace and spectrum outputs as a scan.
pub fn run_simulation(config: &RunConfig) -> Result<ScanCase> {
    config.validate()?;
    let grid = config.grid()?;
    let tau = config.taus.first().copied().unwrap_or(config.cfl_limit());
    let stepper = config.stepper(tau)?;
    let state0 = config.initial_state(&grid);
    let base = config.s + config.sigma;
    let span = config.t_end - config.t0;
    let n = (span / tau).round().max(1.0) as usize;
    let (final_state, trace, blowup_step) =
        march_with_trace(&state0, &stepper, n, config.t0, base)?;
    let k = config.modes as f64;
    let ratio = config.dim as f64 * tau * k * k;
    if let Some(dir) = &config.output_dir {
        ensure_dir(dir)?;
        io::write_norms_csv(&dir.join(format!("norms_tau{tau:e}.csv")), &trace)?;
        io::write_spectrum_csv(
            &dir.join(format!("spectrum_tau{tau:e}.csv")),
            &final_state.psi,
        )?;
        io::write_run_metadata(
            &dir.join("metadata.json"),
            config,
            ratio,
            ratio <= config.cfl_constant,
        )?;
    }
    Ok(ScanCase {
        tau,
        ratio,
        compliant: ratio <= 2.0 * std::f64::consts::PI,
        steps: n,
        trace,
        blowup_step,
        final_state,
    })
}

/// Write the spectrum of the initial ψ data without time stepping (tagged
/// with τ = 0 in the filename).
pub fn write_initial_spectrum(config: &RunConfig) -> Result<PathBuf> {
    config.validate()?;
    let dir = config.output_dir.as_ref().ok_or_else(|| {
        Error::Invalid("an output directory is required to write the spectrum".into())
    })?;
    ensure_dir(dir)?;
    let grid = config.grid()?;
    let state = config.initial_state(&grid);
    let path = dir.join(format!("spectrum_tau{:e}.csv", 0.0));
    io::write_spectrum_csv(&path, &state.psi)?;
    Ok(path)
}

/// Worst relative deviations between the transformed recursion and the plain
/// splitting chain it must reproduce.
#[derive(Clone, Copy, Debug)]
pub struct AuditReport {
    pub steps: usize,
    /// ψ_I against ψ.
    pub max_dev_psi: f64,
    /// Elliptically recovered ψ against ψ.
    pub max_dev_recovered: f64,
    pub max_dev_u: f64,
    pub max_dev_udot: f64,
    /// Reconstructed averaged wave field against the splitting-side one.
    pub max_dev_potential: f64,
    /// Its discrete time derivative against the difference quotient.
    pub max_dev_rate: f64,
    pub tolerance: f64,
    /// First level at which any deviation exceeded the tolerance.
    pub first_failure: Option<usize>,
}

impl AuditReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_dev_psi
            .max(self.max_dev_recovered)
            .max(self.max_dev_u)
            .max(self.max_dev_udot)
            .max(self.max_dev_potential)
            .max(self.max_dev_rate)
    }

    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn relative_dev(
    a: &crate::spectral::SpectralField,
    b: &crate::spectral::SpectralField,
) -> Result<f64> {
    let diff = a.sub(b)?.norm_l2();
    let scale = b.norm_l2();
    Ok(if scale > 0.0 { diff / scale } else { diff })
}

/// Step the transformed recursion and the plain splitting side by side,
/// comparing every reconstructable quantity at every level.
pub fn run_equivalence_audit(config: &RunConfig, steps: usize) -> Result<AuditReport> {
    config.validate()?;
    if steps == 0 {
        return Err(Error::Invalid("the audit needs at least one step".into()));
    }
    let grid = config.grid()?;
    let tau = config.taus.first().copied().unwrap_or(1e-3);
    let stepper = config.stepper(tau)?;
    let state0 = config.initial_state(&grid);

    // `prev`/`original` are the splitting chain at levels n−1 and n. The
    // reconstructed wave field at level n belongs to the step that produced
    // it, so it is compared against v_pre at level n−1.
    let mut prev = state0.clone();
    let mut original = lie_trotter_step(&state0, &stepper)?;
    let mut ts = bootstrap(&state0, &stepper)?;
    let tolerance = 1e-8;
    let mut report = AuditReport {
        steps,
        max_dev_psi: 0.0,
        max_dev_recovered: 0.0,
        max_dev_u: 0.0,
        max_dev_udot: 0.0,
        max_dev_potential: 0.0,
        max_dev_rate: 0.0,
        tolerance,
        first_failure: None,
    };
    for level in 1..=steps {
        let dev_psi = relative_dev(&ts.psi_int, &original.psi)?;
        let dev_rec = relative_dev(&recover_psi_poisson(&ts, tau)?, &original.psi)?;
        let dev_u = relative_dev(&ts.u, &original.u)?;
        let dev_udot = relative_dev(&ts.udot, &original.udot)?;
        let v_prev = v_pre(&prev, tau)?;
        let dev_v = relative_dev(&potential(&ts, tau)?, &v_prev)?;
        let rate_ref = v_pre(&original, tau)?
            .sub(&v_prev)?
            .scaled(num_complex::Complex64::new(1.0 / tau, 0.0));
        let dev_w = relative_dev(&potential_rate(&ts, tau)?, &rate_ref)?;

        report.max_dev_psi = report.max_dev_psi.max(dev_psi);
        report.max_dev_recovered = report.max_dev_recovered.max(dev_rec);
        report.max_dev_u = report.max_dev_u.max(dev_u);
        report.max_dev_udot = report.max_dev_udot.max(dev_udot);
        report.max_dev_potential = report.max_dev_potential.max(dev_v);
        report.max_dev_rate = report.max_dev_rate.max(dev_w);
        let worst = dev_psi
            .max(dev_rec)
            .max(dev_u)
            .max(dev_udot)
            .max(dev_v)
            .max(dev_w);
        if worst > tolerance && report.first_failure.is_none() {
            report.first_failure = Some(level);
        }

        if level < steps {
            ts = step_transformed(&ts, &stepper)?;
            prev = original;
            original = lie_trotter_step(&prev, &stepper)?;
        }
    }
    Ok(report)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation_rejects_bad_inputs() {
        assert!(RunConfig::new(1, 8).validate().is_ok());
        assert!(RunConfig::new(1, 12).validate().is_err());
        assert!(RunConfig::new(4, 8).validate().is_err());
        let mut c = RunConfig::new(1, 8);
        c.t_end = c.t0;
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(1, 8);
        c.cfl_constant = 7.0;
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(1, 8);
        c.taus = vec![1e-3, -1.0];
        assert!(c.validate().is_err());
    }

    #[test]
    fn default_grid_spans_one_and_a_half_decades_below_the_limit() {
        let config = RunConfig::new(1, 32);
        let taus = config.default_tau_grid();
        let limit = config.cfl_limit();
        let span = config.t_end - config.t0;
        assert!(taus.len() >= 15, "grid too sparse: {}", taus.len());
        assert!(taus[0] <= limit);
        assert!(taus[0] > limit * 0.9);
        let last = *taus.last().unwrap();
        assert!(last <= limit * 10f64.powf(-1.5) * 1.001);
        assert!(last >= limit * 10f64.powf(-1.5) / 1.05);
        for pair in taus.windows(2) {
            assert!(pair[1] < pair[0], "not strictly decreasing: {pair:?}");
        }
        for &tau in &taus {
            let n = span / tau;
            assert!((n - n.round()).abs() < 1e-9, "not snapped: {tau}");
        }
    }

    #[test]
    fn slope_fit_recovers_an_exact_power_law() {
        let xs: Vec<f64> = (1..=10).map(|k| 1e-3 * k as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(1.7)).collect();
        assert!((fit_loglog_slope(&xs, &ys) - 1.7).abs() < 1e-12);
        assert!(fit_loglog_slope(&[1.0], &[1.0]).is_nan());
    }

    #[test]
    fn convergence_sweep_shrinks_errors_with_tau() {
        let mut config = RunConfig::new(1, 8);
        config.t_end = 0.02;
        config.taus = vec![2e-3, 1e-3, 5e-4];
        config.tau_ref = Some(1e-5);
        let dir = tempfile::tempdir().unwrap();
        config.output_dir = Some(dir.path().to_path_buf());
        let outcome = run_convergence(&config).unwrap();
        assert_eq!(outcome.records.len(), 3);
        for pair in outcome.records.windows(2) {
            assert!(pair[1].e_psi < pair[0].e_psi);
            assert!(pair[1].e_u < pair[0].e_u);
            assert!(pair[1].e_udot < pair[0].e_udot);
        }
        for slope in [outcome.slope_psi, outcome.slope_u, outcome.slope_udot] {
            assert!((0.5..1.5).contains(&slope), "slope {slope} far from 1");
        }
        assert!(outcome.cfl_satisfied);
        let csv = std::fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
        assert!(csv.starts_with("tau,K,e_psi,e_u,e_udot,wall_time_s\n"));
        assert_eq!(csv.lines().count(), 4);
        let meta: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("metadata.json")).unwrap())
                .unwrap();
        for key in ["config", "cfl_ratio", "cfl_satisfied", "seed", "version"] {
            assert!(meta.get(key).is_some(), "metadata missing {key}");
        }
    }

    #[test]
    fn user_step_sizes_are_snapped_to_the_span() {
        let mut config = RunConfig::new(1, 8);
        config.t_end = 0.01;
        config.taus = vec![3e-3];
        config.tau_ref = Some(5e-6);
        let outcome = run_convergence(&config).unwrap();
        let expected = 0.01 / 3.0;
        assert!((outcome.records[0].tau - expected).abs() < 1e-15);
    }

    #[test]
    fn reference_step_must_be_much_finer_than_the_sweep() {
        let mut config = RunConfig::new(1, 8);
        config.taus = vec![1e-3];
        config.tau_ref = Some(1e-3);
        assert!(matches!(run_convergence(&config), Err(Error::Invalid(_))));
    }

    #[test]
    fn scan_classifies_and_dumps_each_step_size() {
        let mut config = RunConfig::new(1, 8);
        config.t_end = 0.1;
        config.taus = vec![1e-3, 0.15];
        let dir = tempfile::tempdir().unwrap();
        config.output_dir = Some(dir.path().to_path_buf());
        let outcome = run_cfl_scan(&config).unwrap();
        assert_eq!(outcome.cases.len(), 2);
        assert!(outcome.cases[0].compliant);
        assert!(!outcome.cases[1].compliant);
        assert_eq!(outcome.cases[0].steps, 100);
        assert_eq!(outcome.cases[0].trace.len(), 101);
        assert_eq!(outcome.cases[0].trace[0].t, 0.0);
        let norms = std::fs::read_to_string(dir.path().join("norms_tau1e-3.csv")).unwrap();
        assert!(norms.starts_with("t,n_psi,n_u,n_udot\n"));
        assert_eq!(norms.lines().count(), 102);
        let spectrum =
            std::fs::read_to_string(dir.path().join("spectrum_tau1e-3.csv")).unwrap();
        assert!(spectrum.starts_with("j,re,im,abs\n"));
        assert_eq!(spectrum.lines().count(), 17);
        assert!(dir.path().join("norms_tau1.5e-1.csv").exists());
        assert!(dir.path().join("metadata.json").exists());
    }

    #[test]
    fn scan_defaults_bracket_the_threshold() {
        let reference = RunConfig::new(1, 256);
        assert_eq!(
            reference.default_scan_taus(),
            vec![9.5e-6, 9.5e-5, 9.7e-5, 9.7e-4]
        );
        let other = RunConfig::new(1, 32);
        let taus = other.default_scan_taus();
        let hard = 2.0 * std::f64::consts::PI / 1024.0;
        assert_eq!(taus.len(), 4);
        assert!(taus[1] < hard && hard < taus[2]);
    }

    #[test]
    fn audit_stays_at_rounding_level_on_a_small_grid() {
        let mut config = RunConfig::new(1, 16);
        config.taus = vec![1e-3];
        let report = run_equivalence_audit(&config, 10).unwrap();
        assert!(report.passed(), "audit failed: {report:?}");
        assert!(report.max_deviation() < 1e-10, "{report:?}");
    }

    #[test]
    fn simulation_runs_one_case_with_outputs() {
        let mut config = RunConfig::new(1, 8);
        config.t_end = 0.05;
        config.taus = vec![1e-3];
        let dir = tempfile::tempdir().unwrap();
        config.output_dir = Some(dir.path().to_path_buf());
        let case = run_simulation(&config).unwrap();
        assert_eq!(case.steps, 50);
        assert!(case.blowup_step.is_none());
        assert_eq!(case.final_state.time, 0.05);
        assert!(dir.path().join("norms_tau1e-3.csv").exists());
        assert!(dir.path().join("spectrum_tau1e-3.csv").exists());
    }

    #[test]
    fn initial_spectrum_dump_requires_an_output_dir() {
        let config = RunConfig::new(1, 8);
        assert!(write_initial_spectrum(&config).is_err());
        let dir = tempfile::tempdir().unwrap();
        let mut config = RunConfig::new(1, 8);
        config.output_dir = Some(dir.path().to_path_buf());
        let path = write_initial_spectrum(&config).unwrap();
        assert_eq!(path.file_name().unwrap(), "spectrum_tau0e0.csv");
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 17);
    }
}
