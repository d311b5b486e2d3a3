//! Lie-Trotter splitting for the semidiscrete Zakharov system.
//!
//! Fourier collocation turns the system into
//!
//! ```text
//! i ∂t ψ = Ω²ψ + ℐ(uψ),    ∂t u = u̇,    ∂t u̇ = −Ω²u − Ω²ℐ(|ψ|²)
//! ```
//!
//! One step of size τ freezes ℐ(|ψ_n|²) as the wave source, solves the wave
//! part exactly by variation of constants, and advances ψ with the phase of
//! the time-averaged wave field v (the average of u over the step along that
//! exact wave flow):
//!
//! ```text
//! v            = sinc(τΩ) u_n + ½τ sinc(τΩ/2)² u̇_n + (sinc(τΩ) − 1) ℐ|ψ_n|²
//! ψ_{n+1}      = e^{−iτΩ²} ℐ(e^{−iτv} ψ_n)            (exponential at nodes)
//! (u, u̇)_{n+1} = R(τ)(u_n, u̇_n) + (R(τ) − 1)(ℐ|ψ_n|², 0)
//! ```
//!
//! where R(t) rotates each wave mode, [cos(tω), t sinc(tω); −ω sin(tω),
//! cos(tω)], and moves mode 0 as a free particle (u₀ + t u̇₀, u̇₀). The same v
//! can be reproduced after the step from (u, u̇)_{n+1} with the sign of the
//! u̇ term flipped (`v_post`); the pre/post agreement is a sharp consistency
//! check on the wave update.
//!
//! The step size must obey d·τ·K² ≤ c < 2π. Inside that region the scheme is
//! first-order accurate; beyond it the modes with τ|j|² > 2π go unstable.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{sinc, Grid, OmegaSymbol, SpectralField};

/// Largest admitted value of d·τ·K², just inside the open limit 2π.
pub const DEFAULT_CFL_CONSTANT: f64 = 2.0 * std::f64::consts::PI - 1e-9;

/// Step size and stability policy for the splitting integrator.
#[derive(Clone, Debug)]
pub struct StepperConfig {
    pub tau: f64,
    /// Admitted bound c for d·τ·K²; must lie in (0, 2π).
    pub cfl_constant: f64,
    /// Refuse to step when the bound is violated (true) or only report it
    /// through `cfl_check` (false, used by the instability experiments).
    pub enforce_cfl: bool,
}

impl StepperConfig {
    pub fn new(tau: f64) -> Result<StepperConfig> {
        let config = StepperConfig {
            tau,
            cfl_constant: DEFAULT_CFL_CONSTANT,
            enforce_cfl: true,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_cfl_constant(mut self, c: f64) -> Result<StepperConfig> {
        self.cfl_constant = c;
        self.validate()?;
        Ok(self)
    }

    pub fn warn_only(mut self) -> StepperConfig {
        self.enforce_cfl = false;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::Invalid(format!(
                "step size must be positive and finite, got {}",
                self.tau
            )));
        }
        if !(self.cfl_constant > 0.0 && self.cfl_constant < 2.0 * std::f64::consts::PI) {
            return Err(Error::Invalid(format!(
                "cfl_constant must lie in (0, 2π), got {}",
                self.cfl_constant
            )));
        }
        Ok(())
    }
}

/// Outcome of the step-size restriction check.
#[derive(Clone, Copy, Debug)]
pub struct CflReport {
    /// d·τ·K².
    pub ratio: f64,
    /// The configured constant c.
    pub limit: f64,
    /// ratio ≤ limit (equality counts as satisfied).
    pub satisfied: bool,
}

pub fn cfl_check(grid: &Grid, config: &StepperConfig) -> CflReport {
    let k = grid.degree() as f64;
    let ratio = grid.dim() as f64 * config.tau * k * k;
    CflReport {
        ratio,
        limit: config.cfl_constant,
        satisfied: ratio <= config.cfl_constant,
    }
}

/// Discrete solution (or right-hand side bundle) at one time level.
#[derive(Clone, Debug)]
pub struct ZakharovState {
    pub psi: SpectralField,
    pub u: SpectralField,
    pub udot: SpectralField,
    pub time: f64,
    /// Steps taken since the initial data; feeds blow-up reports and traces.
    pub step: usize,
}

impl ZakharovState {
    pub fn new(
        psi: SpectralField,
        u: SpectralField,
        udot: SpectralField,
        time: f64,
    ) -> Result<ZakharovState> {
        if psi.grid() != u.grid() || u.grid() != udot.grid() {
            return Err(Error::Invalid(
                "state components must share one grid".into(),
            ));
        }
        Ok(ZakharovState {
            psi,
            u,
            udot,
            time,
            step: 0,
        })
    }

    pub fn grid(&self) -> &Grid {
        self.psi.grid()
    }

    pub fn is_finite(&self) -> bool {
        self.psi.is_finite() && self.u.is_finite() && self.udot.is_finite()
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NumericBlowup {
                step: self.step,
                time: self.time,
            })
        }
    }
}

/// Free Schrödinger flow: ψ ← e^{−itΩ²}ψ, wave pair untouched.
pub fn flow_free(state: &ZakharovState, t: f64) -> Result<ZakharovState> {
    Ok(ZakharovState {
        psi: state.psi.apply(&OmegaSymbol::schroedinger_phase(t))?,
        u: state.u.clone(),
        udot: state.udot.clone(),
        time: state.time + t,
        step: state.step,
    })
}

/// Shared form of the averaged wave field: sinc(τΩ)u ± ½τ sinc(τΩ/2)²u̇ +
/// (sinc(τΩ)−1)·source. The sign picks the pre-step (+) or post-step (−) view.
pub(crate) fn averaged_wave_field(
    u: &SpectralField,
    udot: &SpectralField,
    source: &SpectralField,
    tau: f64,
    udot_sign: f64,
) -> Result<SpectralField> {
    let a = u.apply(&OmegaSymbol::sinc_scaled(tau))?;
    let b = udot
        .apply(&OmegaSymbol::half_sinc_squared(tau))?
        .scaled(Complex64::new(0.5 * tau * udot_sign, 0.0));
    let c = source.apply(&OmegaSymbol::sinc_scaled_minus_one(tau))?;
    a.add(&b)?.add(&c)
}

/// Averaged wave field over the upcoming step, from the current level:
/// v = sinc(τΩ)u_n + ½τ sinc(τΩ/2)²u̇_n + (sinc(τΩ)−1)ℐ|ψ_n|².
pub fn v_pre(state: &ZakharovState, tau: f64) -> Result<SpectralField> {
    averaged_wave_field(&state.u, &state.udot, &state.psi.abs_squared(), tau, 1.0)
}

/// The same averaged field reconstructed after the step (u̇ term flipped,
/// source still taken from the pre-step ψ):
/// v = sinc(τΩ)u_{n+1} − ½τ sinc(τΩ/2)²u̇_{n+1} + (sinc(τΩ)−1)ℐ|ψ_n|².
pub fn v_post(next: &ZakharovState, psi_prev: &SpectralField, tau: f64) -> Result<SpectralField> {
    averaged_wave_field(&next.u, &next.udot, &psi_prev.abs_squared(), tau, -1.0)
}

/// Exact free-wave rotation R(t): mode-wise [cos(tω), t sinc(tω); −ω sin(tω),
/// cos(tω)]; mode 0 moves as a free particle. Preserves ω²|u_j|² + |u̇_j|².
pub fn wave_rotation(
    u: &SpectralField,
    udot: &SpectralField,
    t: f64,
) -> Result<(SpectralField, SpectralField)> {
    if u.grid() != udot.grid() {
        return Err(Error::GridMismatch {
            left_dim: u.grid().dim(),
            left_degree: u.grid().degree(),
            right_dim: udot.grid().dim(),
            right_degree: udot.grid().degree(),
        });
    }
    let grid = u.grid().clone();
    let omega = grid.omega();
    let len = grid.len();
    let mut uc = Vec::with_capacity(len);
    let mut vc = Vec::with_capacity(len);
    for (slot, &om) in omega.iter().enumerate() {
        let (sin, cos) = (t * om).sin_cos();
        let tsinc = t * sinc(t * om);
        let a = u.coeffs()[slot];
        let b = udot.coeffs()[slot];
        uc.push(a * cos + b * tsinc);
        vc.push(a * (-om * sin) + b * cos);
    }
    Ok((
        SpectralField::from_coeffs(&grid, uc)?,
        SpectralField::from_coeffs(&grid, vc)?,
    ))
}

/// R(t) − 1 applied to a pair; kept separate so its τ-proportional smallness
/// can be measured without cancellation against the identity part.
pub fn wave_rotation_minus_one(
    u: &SpectralField,
    udot: &SpectralField,
    t: f64,
) -> Result<(SpectralField, SpectralField)> {
    let (ru, rudot) = wave_rotation(u, udot, t)?;
    Ok((ru.sub(u)?, rudot.sub(udot)?))
}

/// Wave half-step around a frozen source:
/// R(τ)(u, u̇) + (R(τ) − 1)(source, 0), fused into one mode-wise pass.
pub(crate) fn wave_update_with_source(
    u: &SpectralField,
    udot: &SpectralField,
    source: &SpectralField,
    tau: f64,
) -> Result<(SpectralField, SpectralField)> {
    let grid = u.grid().clone();
    let omega = grid.omega();
    let len = grid.len();
    let mut uc = Vec::with_capacity(len);
    let mut vc = Vec::with_capacity(len);
    for (slot, &om) in omega.iter().enumerate() {
        let (sin, cos) = (tau * om).sin_cos();
        let tsinc = tau * sinc(tau * om);
        let a = u.coeffs()[slot];
        let b = udot.coeffs()[slot];
        let s = source.coeffs()[slot];
        uc.push(a * cos + b * tsinc + s * (cos - 1.0));
        vc.push(a * (-om * sin) + b * cos + s * (-om * sin));
    }
    Ok((
        SpectralField::from_coeffs(&grid, uc)?,
        SpectralField::from_coeffs(&grid, vc)?,
    ))
}

/// One Lie-Trotter step. Refuses oversized steps when the config enforces the
/// stability bound, and reports blow-up instead of returning NaNs.
pub fn lie_trotter_step(state: &ZakharovState, config: &StepperConfig) -> Result<ZakharovState> {
    config.validate()?;
    let report = cfl_check(state.grid(), config);
    if config.enforce_cfl && !report.satisfied {
        return Err(Error::CflExceeded {
            ratio: report.ratio,
            limit: report.limit,
        });
    }
    let tau = config.tau;

    let source = state.psi.abs_squared();
    let v = averaged_wave_field(&state.u, &state.udot, &source, tau, 1.0)?;

    // Schrödinger part: multiply by the phase at the nodes, then free flow.
    let minus_i_tau = Complex64::new(0.0, -tau);
    let rotated = v.zip_nodes(&state.psi, |vv, pp| (minus_i_tau * vv).exp() * pp)?;
    let psi_next = rotated.apply(&OmegaSymbol::schroedinger_phase(tau))?;

    let (u_next, udot_next) = wave_update_with_source(&state.u, &state.udot, &source, tau)?;

    let next = ZakharovState {
        psi: psi_next,
        u: u_next,
        udot: udot_next,
        time: state.time + tau,
        step: state.step + 1,
    };
    next.check_finite()?;
    Ok(next)
}

/// March `steps` splitting steps, invoking the observer after each one.
pub fn run_splitting(
    state: &ZakharovState,
    config: &StepperConfig,
    steps: usize,
    mut observer: impl FnMut(&ZakharovState),
) -> Result<ZakharovState> {
    let mut current = state.clone();
    for _ in 0..steps {
        current = lie_trotter_step(&current, config)?;
        observer(&current);
    }
    Ok(current)
}

/// Right-hand side of the semidiscrete system, as a state-shaped bundle
/// (only the field components are meaningful):
/// (−i(Ω²ψ + ℐ(uψ)), u̇, −Ω²(u + ℐ|ψ|²)).
pub fn semidiscrete_rhs(state: &ZakharovState) -> Result<ZakharovState> {
    let omega_sq = OmegaSymbol::omega_squared();
    let coupling = state.u.product(&state.psi)?;
    let dpsi = state
        .psi
        .apply(&omega_sq)?
        .add(&coupling)?
        .scaled(Complex64::new(0.0, -1.0));
    let du = state.udot.clone();
    let dudot = state
        .u
        .add(&state.psi.abs_squared())?
        .apply(&omega_sq)?
        .scaled(Complex64::new(-1.0, 0.0));
    Ok(ZakharovState {
        psi: dpsi,
        u: du,
        udot: dudot,
        time: state.time,
        step: state.step,
    })
}

/// Field with coefficients 2 / max(|j|, 1)^{r + 0.51} on every grid mode:
/// real and even, it lies in H^t exactly for t < r + 0.01, which makes the
/// regularity assumptions of the convergence experiments sharp.
pub fn power_law_field(grid: &Grid, regularity: f64) -> SpectralField {
    let coeffs = grid
        .omega()
        .iter()
        .map(|&om| Complex64::new(2.0 / om.max(1.0).powf(regularity + 0.51), 0.0))
        .collect();
    SpectralField::from_coeffs(grid, coeffs).expect("coefficients sized by the grid")
}

/// Initial state built from three power-law fields at t = 0.
pub fn power_law_state(grid: &Grid, s_psi: f64, s_u: f64, s_udot: f64) -> ZakharovState {
    ZakharovState {
        psi: power_law_field(grid, s_psi),
        u: power_law_field(grid, s_u),
        udot: power_law_field(grid, s_udot),
        time: 0.0,
        step: 0,
    }
}
