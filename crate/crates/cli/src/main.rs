use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use susyqm_cli::commands::{self, ContextKind};
use susyqm_cli::grid::Plane;
use susyqm_cli::CliError;
use susyqm_core::aufbau::CombineMode;
use susyqm_core::hydrogen::VerifyPath;

/// Multi-dimensional SUSY-QM toolkit: hydrogen verification bundles, helium
/// Padé-Jastrow VMC, aufbau trial-state construction, and grid exports.
/// All outputs are in Hartree and Bohr; every command is deterministic for a
/// fixed seed. SUSYQM_THREADS caps internal parallelism (absent = all cores).
#[derive(Parser)]
#[command(name = "susyqm", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Analytic,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlaneArg {
    Xy,
    Xz,
    Yz,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Triplet,
    Singlet,
}

#[derive(Clone, Copy, ValueEnum)]
enum ContextArg {
    Pj,
    Bare,
    None,
}

#[derive(Subcommand)]
enum Command {
    /// Run the hydrogen consistency bundle and exit nonzero on any breach.
    VerifyHydrogen {
        /// Derivative route: closed forms (tolerance 1e-8) or central
        /// differences at h = 1e-4 (tolerance 1e-4).
        #[arg(long, value_enum, default_value = "analytic")]
        path: PathArg,
        /// Sample points, at least 0.1 Bohr from the nucleus.
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Export the three components of a sector-two state over a plane grid.
    Sector2Export {
        /// State label: 2s, 2px, 2py, or 2pz.
        #[arg(long)]
        state: String,
        #[arg(long, value_enum, default_value = "xy")]
        plane: PlaneArg,
        /// Half-extent of the grid in Bohr.
        #[arg(long, default_value_t = 10.0)]
        extent: f64,
        /// Points per axis (odd samples the center exactly).
        #[arg(long, default_value_t = 201)]
        resolution: usize,
        /// Grid center as x,y,z in Bohr.
        #[arg(long, default_value = "0,0,0")]
        center: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Variational Monte Carlo for the helium Padé-Jastrow trial state.
    VmcHelium {
        /// Jastrow parameter for a single run.
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        /// Comma-separated α grid; prints the curve and its argmin.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        scan: Option<Vec<f64>>,
        #[arg(long, default_value_t = 64)]
        walkers: usize,
        /// Steps per walker, including burn-in.
        #[arg(long, default_value_t = 20000)]
        steps: usize,
        #[arg(long, default_value_t = 2000)]
        burn: usize,
        /// Gaussian proposal width in Bohr.
        #[arg(long, default_value_t = 0.5)]
        step_size: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Optional CSV of the α-curve.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build sector-two aufbau trial states and run their symmetry tests.
    Aufbau {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Superpotential: pj (Padé-Jastrow), bare (2r̂₁+2r̂₂), or none (0).
        #[arg(long, value_enum, default_value = "pj")]
        context: ContextArg,
        /// Jastrow α of the pj context.
        #[arg(long, default_value_t = 0.353, allow_negative_numbers = true)]
        alpha: f64,
        /// Attach the r₁₂ correlation factor.
        #[arg(long)]
        correlated: bool,
        /// Correlation parameter δ (defaults to --alpha).
        #[arg(long, allow_negative_numbers = true)]
        delta: Option<f64>,
        /// Print the A†-regeneration similarity report.
        #[arg(long)]
        check_regeneration: bool,
        #[arg(long, default_value_t = 200)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Directory for sampled-value CSV export.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn configure_threads() {
    if let Ok(value) = std::env::var("SUSYQM_THREADS") {
        if let Ok(n) = value.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn parse_center(text: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::usage(format!(
            "center must be x,y,z — got `{text}`"
        )));
    }
    let mut center = [0.0; 3];
    for (slot, part) in center.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad center coordinate `{part}`")))?;
    }
    Ok(center)
}

fn run(cli: Cli, w: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::VerifyHydrogen { path, points, seed } => {
            let path = match path {
                PathArg::Analytic => VerifyPath::Analytic,
                PathArg::Numeric => VerifyPath::Numeric,
            };
            commands::verify_hydrogen(path, points, seed, w)
        }
        Command::Sector2Export {
            state,
            plane,
            extent,
            resolution,
            center,
            out,
        } => {
            let plane = match plane {
                PlaneArg::Xy => Plane::Xy,
                PlaneArg::Xz => Plane::Xz,
                PlaneArg::Yz => Plane::Yz,
            };
            let center = parse_center(&center)?;
            commands::sector2_export(&state, plane, extent, resolution, center, &out, w)
        }
        Command::VmcHelium {
            alpha,
            scan,
            walkers,
            steps,
            burn,
            step_size,
            seed,
            out,
        } => commands::vmc_helium(
            alpha,
            scan,
            walkers,
            steps,
            burn,
            step_size,
            seed,
            out.as_deref(),
            w,
        ),
        Command::Aufbau {
            mode,
            context,
            alpha,
            correlated,
            delta,
            check_regeneration,
            points,
            seed,
            out,
        } => {
            let mode = match mode {
                ModeArg::Triplet => CombineMode::Triplet,
                ModeArg::Singlet => CombineMode::Singlet,
            };
            let context = match context {
                ContextArg::Pj => ContextKind::PadeJastrow,
                ContextArg::Bare => ContextKind::Bare,
                ContextArg::None => ContextKind::Free,
            };
            commands::aufbau_cmd(
                mode,
                context,
                alpha,
                correlated,
                delta,
                check_regeneration,
                points,
                seed,
                out.as_deref(),
                w,
            )
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            drop(lock);
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
