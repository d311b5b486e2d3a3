//! Thin command-line front end over `zakharov::experiments`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use zakharov::experiments::{
    run_cfl_scan, run_convergence, run_equivalence_audit, run_simulation, write_initial_spectrum,
    RunConfig, ScanCase,
};

#[derive(Parser)]
#[command(
    name = "zakharov",
    version,
    about = "Pseudospectral splitting experiments for the Zakharov system on the torus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Spatial dimension of the torus (1 to 3)
    #[arg(long, default_value_t = 1)]
    dim: usize,

    /// Modes per axis K (power of two); the grid has 2K points per axis
    #[arg(long)]
    modes: Option<usize>,

    /// Step size; repeat the flag to run several
    #[arg(long = "tau")]
    taus: Vec<f64>,

    /// Final time (default 0.1, or 0.15 for cfl-scan)
    #[arg(long)]
    t_end: Option<f64>,

    /// Base Sobolev index s of the error norms
    #[arg(long, default_value_t = 1.0)]
    s: f64,

    /// Extra regularity of the initial data above the base index
    #[arg(long, default_value_t = 2.0)]
    sigma: f64,

    /// Constant c in the step-size restriction d*tau*K^2 <= c (must be < 2*pi)
    #[arg(long = "cfl-c")]
    cfl_c: Option<f64>,

    /// Refuse violating steps (true) or only report them (false)
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    enforce_cfl: bool,

    /// Directory for CSV and metadata output
    #[arg(long)]
    out: Option<PathBuf>,

    /// Provenance seed recorded in metadata
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Shrink the run for a quick smoke test
    #[arg(long, default_value_t = false)]
    smoke: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep step sizes and fit convergence slopes against a fine reference
    Converge {
        #[command(flatten)]
        common: CommonArgs,
        /// Reference integrator step (default min(1e-7, tau_min/100))
        #[arg(long)]
        tau_ref: Option<f64>,
    },
    /// Trace norms for step sizes bracketing the d*tau*K^2 = 2*pi threshold
    CflScan {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check that the transformed recursion reproduces the splitting
    Audit {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of levels to compare
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Run one splitting simulation with norm trace and final spectrum
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write the spectrum of the initial data without time stepping
    Spectrum {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn build_config(common: &CommonArgs, default_modes: usize, default_t_end: f64) -> RunConfig {
    let mut config = RunConfig::new(common.dim, common.modes.unwrap_or(default_modes));
    config.taus = common.taus.clone();
    config.t_end = common.t_end.unwrap_or(default_t_end);
    config.s = common.s;
    config.sigma = common.sigma;
    if let Some(c) = common.cfl_c {
        config.cfl_constant = c;
    }
    config.enforce_cfl = common.enforce_cfl;
    config.seed = common.seed;
    config.output_dir = common.out.clone();
    if common.smoke {
        config.modes = config.modes.min(16);
        config.t_end = config.t0 + (config.t_end - config.t0).min(0.02);
    }
    config
}

fn print_case(case: &ScanCase) {
    let first = &case.trace[0];
    let last = case.trace.last().unwrap();
    let blowup = match case.blowup_step {
        Some(step) => format!("  blow-up at step {step}"),
        None => String::new(),
    };
    println!(
        "tau {:>10.3e}  ratio/2pi {:>8.4}  {}  norm growth psi {:.3e}, u {:.3e}, udot {:.3e}{}",
        case.tau,
        case.ratio / (2.0 * std::f64::consts::PI),
        if case.compliant { "within  " } else { "violates" },
        last.n_psi / first.n_psi,
        last.n_u / first.n_u,
        last.n_udot / first.n_udot,
        blowup,
    );
}

fn run(cli: Cli) -> zakharov::Result<ExitCode> {
    match cli.command {
        Command::Converge { common, tau_ref } => {
            let mut config = build_config(&common, 32, 0.1);
            config.tau_ref = tau_ref;
            let outcome = run_convergence(&config)?;
            println!(
                "{:>12} {:>12} {:>12} {:>12} {:>9}",
                "tau", "e_psi", "e_u", "e_udot", "wall[s]"
            );
            for r in &outcome.records {
                println!(
                    "{:>12.5e} {:>12.5e} {:>12.5e} {:>12.5e} {:>9.3}",
                    r.tau, r.e_psi, r.e_u, r.e_udot, r.wall_time_s
                );
            }
            println!(
                "fitted slopes: psi {:.3}, u {:.3}, udot {:.3}  (worst d*tau*K^2 = {:.4}, within bound: {})",
                outcome.slope_psi,
                outcome.slope_u,
                outcome.slope_udot,
                outcome.cfl_ratio,
                outcome.cfl_satisfied
            );
            if let Some(dir) = &config.output_dir {
                println!("wrote {}", dir.join("convergence.csv").display());
            }
        }
        Command::CflScan { common } => {
            let config = build_config(&common, 256, 0.15);
            let outcome = run_cfl_scan(&config)?;
            for case in &outcome.cases {
                print_case(case);
            }
            if let Some(dir) = &config.output_dir {
                println!("wrote norm traces and spectra to {}", dir.display());
            }
        }
        Command::Audit { common, steps } => {
            let mut config = build_config(&common, 32, 0.1);
            if config.taus.is_empty() {
                config.taus = vec![1e-3];
            }
            let steps = if common.smoke { steps.min(10) } else { steps };
            let report = run_equivalence_audit(&config, steps)?;
            println!("levels compared: {}", report.steps);
            println!("max relative deviations:");
            println!("  psi (integral view)  {:.3e}", report.max_dev_psi);
            println!("  psi (elliptic)       {:.3e}", report.max_dev_recovered);
            println!("  u                    {:.3e}", report.max_dev_u);
            println!("  udot                 {:.3e}", report.max_dev_udot);
            println!("  averaged wave field  {:.3e}", report.max_dev_potential);
            println!("  wave field rate      {:.3e}", report.max_dev_rate);
            match report.first_failure {
                None => println!("PASS: all levels within {:.0e}", report.tolerance),
                Some(level) => {
                    println!("FAIL: exceeded {:.0e} at level {level}", report.tolerance);
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        Command::Simulate { common } => {
            let config = build_config(&common, 32, 0.1);
            let case = run_simulation(&config)?;
            print_case(&case);
            let last = case.trace.last().unwrap();
            println!(
                "final t = {}, norms: psi {:.6e}, u {:.6e}, udot {:.6e}",
                last.t, last.n_psi, last.n_u, last.n_udot
            );
            if let Some(dir) = &config.output_dir {
                println!("wrote trace and spectrum to {}", dir.display());
            }
        }
        Command::Spectrum { common } => {
            let config = build_config(&common, 32, 0.1);
            let path = write_initial_spectrum(&config)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
