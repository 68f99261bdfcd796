//! Command-line front end: loads instance files, dispatches computations,
//! and emits human-readable or machine-readable reports.
//!
//! Exit status: 0 when all checks pass, 1 when a mathematical check fails,
//! 2 on input or parse errors.

mod commands;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use modkit::instance::InstanceFile;
use modkit::Tolerances;

use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "modkit",
    version,
    about = "Numerical toolkit for concrete Hilbert C*-modules and C*-correspondences"
)]
struct Cli {
    /// Relative singular-value cutoff for rank and membership decisions.
    #[arg(long, global = true)]
    tol_rank: Option<f64>,
    /// Orthonormality residual accepted for stored bases.
    #[arg(long, global = true)]
    tol_orth: Option<f64>,
    /// Residual accepted when checking operator identities.
    #[arg(long, global = true)]
    tol_eq: Option<f64>,
    /// Eigenvalue floor accepted when checking positivity.
    #[arg(long, global = true)]
    tol_psd: Option<f64>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Perturb the built representation by noise of this scale before
    /// verifying (represent only).
    #[arg(long, global = true)]
    inject_noise: Option<f64>,
    /// Include basis listings in the report (compacts/adjointables only).
    #[arg(long, global = true)]
    basis: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate every section of an instance file.
    Validate { file: PathBuf },
    /// Compute the concrete compact-module maps of a module.
    Compacts { file: PathBuf, module_id: String },
    /// Compute the idealizer realizing the adjointable maps of a module.
    Adjointables { file: PathBuf, module_id: String },
    /// Build and verify the representation of a correspondence.
    Represent {
        file: PathBuf,
        correspondence_id: String,
        #[arg(default_value = "default")]
        rho_id: String,
    },
    /// Decide whether a correspondence carries a bimodule structure.
    BimoduleCheck {
        file: PathBuf,
        correspondence_id: String,
    },
    /// Search the ideals of the left algebra for one matching the compacts.
    IdealCheck {
        file: PathBuf,
        correspondence_id: String,
    },
    /// Build the interior tensor product of two correspondences and its
    /// representation.
    Tensor {
        file: PathBuf,
        x_id: String,
        y_id: String,
    },
    /// Report the dimension gap between the row module over M_n and the
    /// column module over the scalars.
    Daws { n: usize },
}

/// Defaults, overridden by the environment, then the instance file, then
/// command-line flags.
fn base_tolerances() -> Tolerances {
    let mut t = Tolerances::default();
    if let Ok(value) = std::env::var("MODKIT_TOL_RANK") {
        if let Ok(parsed) = value.parse::<f64>() {
            t.rank = parsed;
        }
    }
    t
}

fn apply_flag_overrides(cli: &Cli, mut t: Tolerances) -> modkit::Result<Tolerances> {
    for (name, value) in [
        ("--tol-rank", cli.tol_rank),
        ("--tol-orth", cli.tol_orth),
        ("--tol-eq", cli.tol_eq),
        ("--tol-psd", cli.tol_psd),
    ] {
        if let Some(v) = value {
            if v < 0.0 || !v.is_finite() {
                return Err(modkit::Error::Instance(format!(
                    "{name} must be a nonnegative finite number, got {v}"
                )));
            }
        }
    }
    if let Some(v) = cli.tol_rank {
        t.rank = v;
    }
    if let Some(v) = cli.tol_orth {
        t.orth = v;
    }
    if let Some(v) = cli.tol_eq {
        t.eq = v;
    }
    if let Some(v) = cli.tol_psd {
        t.psd = v;
    }
    Ok(t)
}

fn run(cli: &Cli) -> modkit::Result<Report> {
    let tolerances_for = |parsed: &InstanceFile| {
        apply_flag_overrides(cli, parsed.effective_tolerances(base_tolerances()))
    };
    match &cli.command {
        Command::Validate { file } => {
            let parsed = InstanceFile::load(file)?;
            let tol = tolerances_for(&parsed)?;
            commands::validate(&parsed, &tol, &file.display().to_string())
        }
        Command::Compacts { file, module_id } => {
            let parsed = InstanceFile::load(file)?;
            let tol = tolerances_for(&parsed)?;
            commands::compacts(
                &parsed,
                module_id,
                &tol,
                cli.basis,
                &file.display().to_string(),
            )
        }
        Command::Adjointables { file, module_id } => {
            let parsed = InstanceFile::load(file)?;
            let tol = tolerances_for(&parsed)?;
            commands::adjointables(
                &parsed,
                module_id,
                &tol,
                cli.basis,
                &file.display().to_string(),
            )
        }
        Command::Represent {
            file,
            correspondence_id,
            rho_id,
        } => {
            let parsed = InstanceFile::load(file)?;
            let tol = tolerances_for(&parsed)?;
            commands::represent(
                &parsed,
                correspondence_id,
                rho_id,
                cli.inject_noise,
                &tol,
                &file.display().to_string(),
            )
        }
        Command::BimoduleCheck {
            file,
            correspondence_id,
        } => {
            let parsed = InstanceFile::load(file)?;
            let tol = tolerances_for(&parsed)?;
            commands::bimodule_check(
                &parsed,
                correspondence_id,
                &tol,
                &file.display().to_string(),
            )
        }
        Command::IdealCheck {
            file,
            correspondence_id,
        } => {
            let parsed = InstanceFile::load(file)?;
            let tol = tolerances_for(&parsed)?;
            commands::ideal_check(
                &parsed,
                correspondence_id,
                &tol,
                &file.display().to_string(),
            )
        }
        Command::Tensor { file, x_id, y_id } => {
            let parsed = InstanceFile::load(file)?;
            let tol = tolerances_for(&parsed)?;
            commands::tensor(&parsed, x_id, y_id, &tol, &file.display().to_string())
        }
        Command::Daws { n } => {
            let tol = apply_flag_overrides(cli, base_tolerances())?;
            commands::dimension_gap(*n, &tol)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            std::process::exit(report.status);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
