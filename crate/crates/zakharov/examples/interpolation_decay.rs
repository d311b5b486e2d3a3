//! Trigonometric interpolation loses exactly the regularity you'd expect:
//! sampling a function of Sobolev smoothness s+σ on a K-grid and measuring
//! the interpolation error in H^s decays like K^(−σ).
//!
//! The "function" here is the built-in power-law profile, represented
//! exactly on a much finer grid; the coarse grids see only its node values.
//!
//!     cargo run --release --example interpolation_decay

use zakharov::experiments::fit_loglog_slope;
use zakharov::split::power_law_field;
use zakharov::{Grid, SpectralField};

fn main() -> zakharov::Result<()> {
    let s = 1.0;
    let sigma = 2.0;
    let fine = Grid::new(1, 512)?;
    let truth = power_law_field(&fine, s + sigma);
    let truth_values = truth.node_values();

    let degrees = [16usize, 32, 64, 128];
    let mut errors = Vec::new();
    println!("{:>6} {:>14}", "K", "‖ℐ_K w − w‖_{H^1}");
    for &degree in &degrees {
        let coarse = Grid::new(1, degree)?;
        // Coarse nodes are a subset of the fine ones: gather by stride.
        let stride = fine.points_per_axis() / coarse.points_per_axis();
        let samples: Vec<_> = truth_values.iter().step_by(stride).copied().collect();
        let interpolant = SpectralField::from_node_values(&coarse, &samples)?;
        let err = interpolant.embed_into(&fine)?.sub(&truth)?.norm_sobolev(s);
        println!("{degree:>6} {err:>14.6e}");
        errors.push(err);
    }

    let ks: Vec<f64> = degrees.iter().map(|&d| d as f64).collect();
    let slope = fit_loglog_slope(&ks, &errors);
    println!("fitted decay rate {slope:.3}, expected −σ = −{sigma}");
    Ok(())
}
