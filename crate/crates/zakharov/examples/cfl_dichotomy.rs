//! The step-size dichotomy at d·τ·K² = 2π: step sizes below the threshold
//! keep all norms tame, step sizes above it blow up — with the growth
//! concentrated in exactly the modes j that violate τ·|j|² ≤ 2π.
//!
//!     cargo run --release --example cfl_dichotomy [output_dir]

use std::path::PathBuf;

use zakharov::experiments::{run_cfl_scan, RunConfig};

fn main() -> zakharov::Result<()> {
    let mut config = RunConfig::new(1, 256);
    config.t_end = 0.15;
    config.output_dir = std::env::args().nth(1).map(PathBuf::from);

    // Defaults bracket the threshold 2π/K² ≈ 9.5874e-5 tightly from both
    // sides, plus one step size a decade below and one a decade above.
    let outcome = run_cfl_scan(&config)?;
    println!(
        "{:>10} {:>10} {:>9} {:>12} {:>12} {:>12}",
        "tau", "ratio/2π", "status", "ψ growth", "u growth", "u̇ growth"
    );
    for case in &outcome.cases {
        let first = &case.trace[0];
        let last = case.trace.last().unwrap();
        println!(
            "{:>10.2e} {:>10.4} {:>9} {:>12.3e} {:>12.3e} {:>12.3e}{}",
            case.tau,
            case.ratio / (2.0 * std::f64::consts::PI),
            if case.compliant { "stable" } else { "UNSTABLE" },
            last.n_psi / first.n_psi,
            last.n_u / first.n_u,
            last.n_udot / first.n_udot,
            match case.blowup_step {
                Some(step) => format!("  (left f64 range at step {step})"),
                None => String::new(),
            }
        );
    }

    // Where did the energy go? For the violating step sizes, find the modes
    // whose ψ coefficients grew the most: they sit inside {j : τ·j² > 2π}.
    let initial = config.initial_state(&config.grid()?);
    for case in outcome.cases.iter().filter(|c| !c.compliant) {
        let threshold = (2.0 * std::f64::consts::PI / case.tau).sqrt();
        let grid = case.final_state.grid().clone();
        let mut worst = (0i64, 0.0f64);
        for (slot, c) in case.final_state.psi.coeffs().iter().enumerate() {
            let j = grid.mode_at(slot)[0];
            let growth = c.norm() / initial.psi.coeffs()[slot].norm().max(1e-300);
            if growth > worst.1 {
                worst = (j, growth);
            }
        }
        println!(
            "tau {:.2e}: instability threshold |j| > {:.1}, fastest-growing mode j = {} (×{:.2e})",
            case.tau, threshold, worst.0, worst.1
        );
    }
    if let Some(dir) = &config.output_dir {
        println!("wrote norm traces and spectra to {}", dir.display());
    }
    Ok(())
}
