//! Command-line front end: parameter sweeps, figure-data generation,
//! measure and dimension queries, CSV/JSON emission, and gnuplot script
//! generation. Identical flags and config always produce byte-identical
//! output; nothing here consults the environment.
//!
//! Exit codes: 0 success, 1 runtime or convergence failure, 2 usage error.

pub mod commands;
pub mod config;
pub mod output;
pub mod plot;
pub mod reader;

use clap::{Parser, Subcommand};
use config::{BackendKind, OutputFormat, RadialModeArg, RunConfig, UnitSystem};
use plot::PlotKind;
use std::path::PathBuf;
use std::process::ExitCode;

/// A bad flag or flag combination; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Parser)]
#[command(
    name = "fractalqm",
    version,
    about = "Fractal calculus and fractal quantum mechanics sweeps",
    after_help = "Config file: flat `key = value` lines (unit_system, staircase_backend, \
                  radial_mode, output_format, output_path, alpha, beta); command-line flags \
                  take precedence."
)]
pub struct Cli {
    /// Flat key = value config file, overridden by flags.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Data output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the gamma-dimension of a Cantor-type set on [0, 1] and
    /// print the mass-vs-alpha table behind the bisection.
    Dimension {
        /// Kept end-fraction per refinement step, in (0, 1/2].
        #[arg(long)]
        keep_ratio: f64,
        /// Refinement depth of the approximant.
        #[arg(long, default_value_t = 12)]
        depth: u32,
        /// Bisection tolerance on alpha.
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        /// Left end of the mass window (defaults to 0).
        #[arg(long)]
        a: Option<f64>,
        /// Right end of the mass window (defaults to 1).
        #[arg(long)]
        b: Option<f64>,
    },

    /// Sample an integral staircase S(x) over an x range.
    #[command(allow_negative_numbers = true)]
    Staircase {
        /// Staircase backend (default from config).
        #[arg(long, value_enum)]
        backend: Option<BackendKind>,
        /// Exponent for the power-law and numeric backends.
        #[arg(long)]
        alpha: Option<f64>,
        /// Cantor keep-ratio for the analytic and numeric backends.
        #[arg(long, default_value_t = 1.0 / 3.0)]
        keep_ratio: f64,
        /// Approximant depth for the numeric backend.
        #[arg(long, default_value_t = 12)]
        depth: u32,
        /// Scale so S(support end) = this value (analytic backend).
        #[arg(long, default_value_t = 1.0)]
        normalization: f64,
        #[arg(long, default_value_t = 0.0)]
        xmin: f64,
        #[arg(long, default_value_t = 1.0)]
        xmax: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },

    /// Hydrogen radial probability density sweep: CSV r,alpha,P
    /// (alpha outer, r inner).
    HydrogenDensity {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: u32,
        /// Comma-separated alpha list (default: config alpha).
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<f64>>,
        #[arg(long, default_value_t = 0.0)]
        rmin: f64,
        #[arg(long, default_value_t = 10.0)]
        rmax: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Density form (default from config).
        #[arg(long, value_enum)]
        mode: Option<RadialModeArg>,
        /// Radial prefactor A_nl.
        #[arg(long, default_value_t = 1.0)]
        a_nl: f64,
        #[arg(long, value_enum)]
        backend: Option<BackendKind>,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        keep_ratio: f64,
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },

    /// Hydrogen energy levels: CSV n,alpha,E_hartree,E_eV
    /// (alpha outer, n inner).
    HydrogenEnergies {
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<f64>>,
        #[arg(long, value_enum)]
        backend: Option<BackendKind>,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        keep_ratio: f64,
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },

    /// Harmonic-oscillator probability densities: CSV x,alpha,n,P
    /// (n outer, then alpha, then x).
    #[command(allow_negative_numbers = true)]
    HoDensity {
        /// Comma-separated level list.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        n: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<f64>>,
        #[arg(long, default_value_t = -4.0)]
        xmin: f64,
        #[arg(long, default_value_t = 4.0)]
        xmax: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        omega_alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, value_enum)]
        backend: Option<BackendKind>,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        keep_ratio: f64,
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },

    /// Harmonic-oscillator spectrum: CSV n,omega_alpha,E
    /// (omega_alpha outer, n inner).
    HoEnergies {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        /// Comma-separated fractal angular frequencies.
        #[arg(long, value_delimiter = ',', default_value = "1.0")]
        omega_alpha: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },

    /// Fractal-time evolution of a superposition at a fixed point:
    /// CSV t,re,im,abs2.
    #[command(allow_negative_numbers = true)]
    Evolve {
        #[arg(long, value_enum)]
        system: commands::EvolveSystem,
        /// Term `c_re,c_im,n` (oscillator) or `c_re,c_im,n[,l,m]`
        /// (hydrogen); repeatable.
        #[arg(long = "term", value_name = "SPEC", allow_hyphen_values = true)]
        terms: Vec<String>,
        /// Space exponent (default: config alpha).
        #[arg(long)]
        alpha: Option<f64>,
        /// Time exponent (default: config beta).
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Evaluation point: `x` (oscillator) or `r[,theta,phi]` (hydrogen).
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        omega_alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },

    /// Generate a gnuplot script for an emitted data file.
    PlotScript {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum)]
        kind: PlotKind,
    },
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version on stdout (exit 0), errors on stderr
            let code = if e.use_stderr() { 2u8 } else { 0u8 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = exit_code_for(&err);
            if code == 2 {
                eprintln!("usage error; run `fractalqm <command> --help` for flags");
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    if let Some(fractalqm::Error::InvalidParameter(_)) = err.downcast_ref::<fractalqm::Error>() {
        return 2;
    }
    1
}

pub fn execute(cli: Cli) -> anyhow::Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(path) = cli.output {
        cfg.output_path = Some(path);
    }
    if let Some(format) = cli.format {
        cfg.output_format = format;
    }
    match cli.command {
        Command::Dimension {
            keep_ratio,
            depth,
            tol,
            a,
            b,
        } => commands::dimension(&cfg, keep_ratio, depth, tol, a, b),
        Command::Staircase {
            backend,
            alpha,
            keep_ratio,
            depth,
            normalization,
            xmin,
            xmax,
            samples,
        } => commands::staircase(
            &cfg,
            backend,
            alpha,
            keep_ratio,
            depth,
            normalization,
            xmin,
            xmax,
            samples,
        ),
        Command::HydrogenDensity {
            n,
            l,
            alpha,
            rmin,
            rmax,
            samples,
            mode,
            a_nl,
            backend,
            keep_ratio,
            depth,
        } => commands::hydrogen_density(
            &cfg,
            n,
            l,
            alpha,
            rmin,
            rmax,
            samples,
            mode,
            a_nl,
            backend,
            keep_ratio,
            depth,
        ),
        Command::HydrogenEnergies {
            n_min,
            n_max,
            alpha,
            backend,
            keep_ratio,
            depth,
        } => commands::hydrogen_energies(&cfg, n_min, n_max, alpha, backend, keep_ratio, depth),
        Command::HoDensity {
            n,
            alpha,
            xmin,
            xmax,
            samples,
            mass,
            omega_alpha,
            hbar,
            backend,
            keep_ratio,
            depth,
        } => commands::ho_density(
            &cfg,
            n,
            alpha,
            xmin,
            xmax,
            samples,
            mass,
            omega_alpha,
            hbar,
            backend,
            keep_ratio,
            depth,
        ),
        Command::HoEnergies {
            n_max,
            omega_alpha,
            mass,
            hbar,
        } => commands::ho_energies(&cfg, n_max, omega_alpha, mass, hbar),
        Command::Evolve {
            system,
            terms,
            alpha,
            beta,
            t_max,
            samples,
            at,
            mass,
            omega_alpha,
            hbar,
        } => commands::evolve(
            &cfg,
            system,
            terms,
            alpha,
            beta,
            t_max,
            samples,
            at,
            mass,
            omega_alpha,
            hbar,
        ),
        Command::PlotScript { data, kind } => commands::plot_script(&cfg, &data, kind),
    }
}

pub(crate) fn constants_for(unit_system: UnitSystem) -> fractalqm::hydrogen::PhysicalConstants {
    match unit_system {
        UnitSystem::Atomic => fractalqm::hydrogen::PhysicalConstants::atomic(),
        UnitSystem::Si => fractalqm::hydrogen::PhysicalConstants::si(),
    }
}
