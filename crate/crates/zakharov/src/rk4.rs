//! Classical Runge-Kutta reference integrator.
//!
//! Integrates the same semidiscrete collocation system as the splitting
//! scheme, so differences between the two measure pure time-discretization
//! error of the splitting. The classical four-stage scheme is fourth order
//! and explicit; its stability window on the imaginary axis ends near 2√2,
//! which for the stiffest Schrödinger mode means h·d·K² ≲ 2.8
//! (`stable_step_bound`). Oversized steps are not rejected up front: the
//! per-step finiteness guard reports blow-up instead, which keeps the
//! stability threshold itself observable.

use crate::error::{Error, Result};
use crate::spectral::{Grid, SpectralField};
use crate::split::{semidiscrete_rhs, ZakharovState};

/// Reference run: march with `tau_ref` and land exactly on `t_end` with one
/// final partial step.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceConfig {
    pub tau_ref: f64,
    pub t_end: f64,
}

impl ReferenceConfig {
    pub fn new(tau_ref: f64, t_end: f64) -> Result<ReferenceConfig> {
        if !(tau_ref > 0.0 && tau_ref.is_finite()) {
            return Err(Error::Invalid(format!(
                "reference step must be positive and finite, got {tau_ref}"
            )));
        }
        Ok(ReferenceConfig { tau_ref, t_end })
    }
}

/// Largest h with h·d·K² = 2.8, just inside the explicit stability window.
pub fn stable_step_bound(grid: &Grid) -> f64 {
    let k = grid.degree() as f64;
    2.8 / (grid.dim() as f64 * k * k)
}

fn advance(
    base: &ZakharovState,
    h: f64,
    slope: &ZakharovState,
    time: f64,
) -> Result<ZakharovState> {
    Ok(ZakharovState {
        psi: base.psi.axpy(h, &slope.psi)?,
        u: base.u.axpy(h, &slope.u)?,
        udot: base.udot.axpy(h, &slope.udot)?,
        time,
        step: base.step,
    })
}

/// One classical Runge-Kutta step of size h.
pub fn rk4_step(state: &ZakharovState, h: f64) -> Result<ZakharovState> {
    let half = 0.5 * h;
    let k1 = semidiscrete_rhs(state)?;
    let k2 = semidiscrete_rhs(&advance(state, half, &k1, state.time + half)?)?;
    let k3 = semidiscrete_rhs(&advance(state, half, &k2, state.time + half)?)?;
    let k4 = semidiscrete_rhs(&advance(state, h, &k3, state.time + h)?)?;

    let sixth = h / 6.0;
    let combine = |y: &SpectralField,
                   a: &SpectralField,
                   b: &SpectralField,
                   c: &SpectralField,
                   d: &SpectralField|
     -> Result<SpectralField> {
        y.axpy(sixth, &a.axpy(2.0, b)?.axpy(2.0, c)?.add(d)?)
    };
    Ok(ZakharovState {
        psi: combine(&state.psi, &k1.psi, &k2.psi, &k3.psi, &k4.psi)?,
        u: combine(&state.u, &k1.u, &k2.u, &k3.u, &k4.u)?,
        udot: combine(&state.udot, &k1.udot, &k2.udot, &k3.udot, &k4.udot)?,
        time: state.time + h,
        step: state.step + 1,
    })
}

/// Integrate from the state's time to `t_end`. Times are assigned as
/// t0 + i·tau_ref rather than accumulated, so millions of steps do not drift;
/// the last step is shortened to land exactly on `t_end`.
pub fn integrate_reference(
    state0: &ZakharovState,
    config: &ReferenceConfig,
) -> Result<ZakharovState> {
    let total = config.t_end - state0.time;
    if total < 0.0 {
        return Err(Error::Invalid(format!(
            "reference target {} lies before the state's time {}",
            config.t_end, state0.time
        )));
    }
    let t0 = state0.time;
    let n_full = (total / config.tau_ref).floor() as usize;
    let mut current = state0.clone();
    for i in 1..=n_full {
        current = rk4_step(&current, config.tau_ref)?;
        current.time = t0 + i as f64 * config.tau_ref;
        current.check_finite()?;
    }
    let remainder = config.t_end - current.time;
    if remainder > 1e-12 * config.tau_ref {
        current = rk4_step(&current, remainder)?;
        current.check_finite()?;
    }
    current.time = config.t_end;
    Ok(current)
}

/// Splitting error against a reference state in the norms the convergence
/// theory uses: ψ in H^{s+2}, u in H^{s+1}, u̇ in H^s.
#[derive(Clone, Copy, Debug)]
pub struct ErrorTriple {
    pub e_psi: f64,
    pub e_u: f64,
    pub e_udot: f64,
}

pub fn measure_errors(
    approx: &ZakharovState,
    reference: &ZakharovState,
    s: f64,
) -> Result<ErrorTriple> {
    if approx.grid() != reference.grid() {
        return Err(Error::GridMismatch {
            left_dim: approx.grid().dim(),
            left_degree: approx.grid().degree(),
            right_dim: reference.grid().dim(),
            right_degree: reference.grid().degree(),
        });
    }
    if (approx.time - reference.time).abs() > 1e-9 {
        return Err(Error::TimeMismatch {
            left: approx.time,
            right: reference.time,
        });
    }
    Ok(ErrorTriple {
        e_psi: approx.psi.sub(&reference.psi)?.norm_sobolev(s + 2.0),
        e_u: approx.u.sub(&reference.u)?.norm_sobolev(s + 1.0),
        e_udot: approx.udot.sub(&reference.udot)?.norm_sobolev(s),
    })
}
