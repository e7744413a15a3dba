//! `pfbind` — command-line reports for the electron–photon binding numerics.
//!
//! Subcommands map one-to-one onto library operations; every knob can also
//! come from a flat key=value config file, so any report is reproducible
//! from a single committed file. Exit codes: 0 success, 1 usage/validation
//! error, 2 convergence or numerical failure, 3 verification found a failing
//! identity.

mod commands;
mod config;
mod report;

use clap::{Parser, Subcommand};

use config::{OutputFormat, RunConfig};
use pfbind::{Error, Result};

#[derive(Parser)]
#[command(
    name = "pfbind",
    version,
    about = "Variational numerics for an electron coupled to a quantized photon field",
    long_about = "Self-energy, binding thresholds, radiative corrections, and mass \
                  renormalization of a nonrelativistic electron coupled to an \
                  ultraviolet-cut photon field, computed from closed forms and a radial \
                  finite-difference engine. Units: energies in mc²/2, lengths in 2ħ/mc, \
                  sharp photon-momentum cutoff Λ."
)]
struct Cli {
    /// Flat key=value configuration file applied before any flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<String>,

    /// Override one configuration key (repeatable): --set n_points=2400.
    #[arg(long, global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Print the effective configuration (reloadable via --config) and exit.
    #[arg(long, global = true)]
    show_config: bool,

    /// Output format: text-table, csv, or json.
    #[arg(long, global = true, value_name = "FMT")]
    format: Option<String>,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Leading self-energy, its error budget, and the one-photon trial quotient.
    SelfEnergy {
        /// Photon coupling strength.
        #[arg(long)]
        alpha: Option<f64>,
        /// Photon momentum cutoff Λ.
        #[arg(long)]
        lambda: Option<f64>,
        /// Gaussian envelope width (adds 3/(2w²) of kinetic energy).
        #[arg(long)]
        envelope_width: Option<f64>,
        /// Tabulate the leading term over Λ = START..STOP in COUNT steps.
        #[arg(long, value_name = "START:STOP:COUNT")]
        sweep_lambda: Option<String>,
    },
    /// Coupling threshold below which extra binding is guaranteed.
    Threshold {
        /// Coulomb coupling β of the potential −βZ/r.
        #[arg(long)]
        beta: Option<f64>,
        /// Charge factor Z.
        #[arg(long)]
        z: Option<f64>,
        /// Photon momentum cutoff Λ.
        #[arg(long)]
        lambda: Option<f64>,
        /// Error-budget split parameter a ∈ (0,1).
        #[arg(long)]
        a_split: Option<f64>,
        /// Coupling tested against the threshold (defaults to β).
        #[arg(long)]
        probe_alpha: Option<f64>,
    },
    /// Exact radiative correction: spectral and resolvent routes, F(Λ),
    /// the logarithmic approximant, and the charge-scaling table.
    Radiative {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        /// Radial box size (0 = 60 ground-state Bohr radii).
        #[arg(long)]
        r_max: Option<f64>,
        /// Interior grid points (0 = 4000).
        #[arg(long)]
        n_points: Option<usize>,
        /// Two-column (r, V) file replacing the Coulomb potential.
        #[arg(long, value_name = "PATH")]
        potential: Option<String>,
    },
    /// Dump the ℓ=1 dipole spectral measure (delta, weight per state).
    Spectrum {
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        n_points: Option<usize>,
        /// Two-column (r, V) file replacing the Coulomb potential.
        #[arg(long, value_name = "PATH")]
        potential: Option<String>,
    },
    /// Compare the spectral and logarithmic renormalized-mass conventions.
    Mass {
        #[arg(long)]
        alpha: Option<f64>,
        /// Headline cutoff in electron-mass units (always part of the sweep).
        #[arg(long)]
        lambda_over_m: Option<f64>,
    },
    /// Run the verification battery (closed forms, grid oracles, identities).
    ///
    /// The reference workload is a unit-strength Coulomb problem; pass
    /// --beta/--z/--r-max/--n-points to point it elsewhere.
    Verify {
        /// Closed-form subset only (runs in well under a second).
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        n_points: Option<usize>,
    },
    /// Composite scenario reports: small-cutoff, hydrogen, helium, or all.
    Report {
        /// Scenario name.
        #[arg(long, value_name = "NAME")]
        preset: String,
    },
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 1;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Validation { .. } => 1,
                _ => 2,
            }
        }
    }
}

/// Apply config sources in increasing precedence: file, --set, flags.
fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    for spec in &cli.set {
        cfg.apply_set(spec)?;
    }

    // dedicated flags win last; mark() keeps them visible to `verify`
    macro_rules! flag {
        ($opt:expr, $field:ident, $key:literal) => {
            if let Some(v) = $opt {
                cfg.$field = v.clone();
                cfg.mark($key);
            }
        };
    }
    match &cli.command {
        Command::SelfEnergy { alpha, lambda, envelope_width, sweep_lambda } => {
            flag!(*alpha, alpha, "alpha");
            flag!(*lambda, lambda_cut, "lambda_cut");
            flag!(*envelope_width, envelope_width, "envelope_width");
            flag!(sweep_lambda.clone(), sweep_lambda, "sweep_lambda");
        }
        Command::Threshold { beta, z, lambda, a_split, probe_alpha } => {
            flag!(*beta, beta, "beta");
            flag!(*z, z, "z");
            flag!(*lambda, lambda_cut, "lambda_cut");
            flag!(*a_split, a_split, "a_split");
            flag!(*probe_alpha, probe_alpha, "probe_alpha");
            if probe_alpha.is_none() && !cfg.is_explicit("probe_alpha") {
                cfg.probe_alpha = cfg.beta; // the natural probe is the physical coupling
            }
        }
        Command::Radiative { alpha, beta, z, lambda, r_max, n_points, potential } => {
            flag!(*alpha, alpha, "alpha");
            flag!(*beta, beta, "beta");
            flag!(*z, z, "z");
            flag!(*lambda, lambda_cut, "lambda_cut");
            flag!(*r_max, r_max, "r_max");
            flag!(*n_points, n_points, "n_points");
            flag!(potential.clone(), potential_file, "potential_file");
        }
        Command::Spectrum { beta, z, r_max, n_points, potential } => {
            flag!(*beta, beta, "beta");
            flag!(*z, z, "z");
            flag!(*r_max, r_max, "r_max");
            flag!(*n_points, n_points, "n_points");
            flag!(potential.clone(), potential_file, "potential_file");
        }
        Command::Mass { alpha, lambda_over_m } => {
            flag!(*alpha, alpha, "alpha");
            flag!(*lambda_over_m, lambda_over_m, "lambda_over_m");
        }
        Command::Verify { quick, beta, z, lambda, alpha, r_max, n_points } => {
            if *quick {
                cfg.quick = true;
                cfg.mark("quick");
            }
            flag!(*beta, beta, "beta");
            flag!(*z, z, "z");
            flag!(*lambda, lambda_cut, "lambda_cut");
            flag!(*alpha, alpha, "alpha");
            flag!(*r_max, r_max, "r_max");
            flag!(*n_points, n_points, "n_points");
        }
        Command::Report { .. } => {}
    }
    if let Some(fmt) = &cli.format {
        cfg.format = OutputFormat::parse(fmt)?;
        cfg.mark("format");
    }
    if let Some(path) = &cli.output {
        cfg.output = path.clone();
        cfg.mark("output");
    }
    Ok(cfg)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    if cfg.output.is_empty() {
        print!("{text}");
        Ok(())
    } else {
        std::fs::write(&cfg.output, text).map_err(|e| {
            Error::validation("output", format!("cannot write {:?}: {e}", cfg.output))
        })
    }
}

fn run(cli: Cli) -> Result<i32> {
    let cfg = build_config(&cli)?;
    if cli.show_config {
        emit(&cfg, &cfg.show())?;
        return Ok(0);
    }
    let (report, code) = match &cli.command {
        Command::SelfEnergy { .. } => (commands::cmd_self_energy(&cfg)?, 0),
        Command::Threshold { .. } => (commands::cmd_threshold(&cfg)?, 0),
        Command::Radiative { .. } => (commands::cmd_radiative(&cfg)?, 0),
        Command::Spectrum { .. } => (commands::cmd_spectrum(&cfg)?, 0),
        Command::Mass { .. } => (commands::cmd_mass(&cfg)?, 0),
        Command::Verify { .. } => commands::cmd_verify(&cfg)?,
        Command::Report { preset } => (commands::cmd_report(&cfg, preset)?, 0),
    };
    emit(&cfg, &report.render(cfg.format))?;
    Ok(code)
}
