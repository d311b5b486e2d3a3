//! Pseudospectral solver for the Zakharov system on the d-dimensional torus.
//!
//! The system couples a complex Schrödinger field ψ with a real wave field u,
//! written in first-order form with the velocity u̇:
//!
//! ```text
//! i ∂t ψ = −Δψ + u ψ,      ∂t u = u̇,      ∂t u̇ = Δu + Δ|ψ|²
//! ```
//!
//! Space is discretized by Fourier collocation on the modes {−K, …, K−1}^d
//! ([`spectral`]); time by a Lie-Trotter splitting whose wave part is solved
//! exactly by variation of constants and whose Schrödinger part multiplies by
//! a phase built from the time-averaged wave field ([`split`]). The scheme is
//! first-order accurate under the step-size restriction d·τ·K² ≤ c < 2π and
//! develops a high-mode instability just beyond it; [`experiments`] measures
//! both effects and writes plot-ready CSV. [`transformed`] re-runs the
//! recursion in transformed variables (difference quotient φ of ψ, integral
//! and elliptically recovered views of ψ) as an independent cross-check, and
//! [`rk4`] integrates the same semidiscrete system with tiny steps to serve
//! as a reference for error measurement.
//!
//! # Running examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release --example first_steps
//! cargo run --release --example convergence
//! cargo run --release --example cfl_dichotomy
//! cargo run --release --example transformed_equivalence
//! cargo run --release --example resolvent_gain
//! cargo run --release --example interpolation_decay
//! ```
//!
//! The same capabilities are scriptable through the thin `zakharov` binary
//! (`converge`, `cfl-scan`, `audit`, `simulate`, `spectrum` subcommands).

pub mod error;
pub mod experiments;
pub mod rk4;
pub mod spectral;
pub mod split;
pub mod transformed;

pub use error::{Error, Result};
pub use spectral::{pair_norm, phi, sinc, Grid, OmegaSymbol, SpectralField};
pub use split::{StepperConfig, ZakharovState};
