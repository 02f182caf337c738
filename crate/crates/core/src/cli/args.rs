use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "polarfermi",
    version,
    about = "Phase boundaries, gap equations and Fermi-sphere spectra of polarized Fermi gases",
    args_override_self = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate kappa^i, kappa^o and kappa^g over a grid in t = dmu/T.
    Kappa(KappaArgs),
    /// Weak-coupling phase boundaries in units of T_c for a radial potential.
    Curves(CurvesArgs),
    /// Compare m-integrals with their small-temperature asymptotics.
    MCheck(MCheckArgs),
    /// Solution counts of the 1-D gap equation and the 1-D phase boundaries.
    Toy1d(Toy1dArgs),
    /// Spectrum of the interaction restricted to the Fermi sphere.
    Spectrum(SpectrumArgs),
    /// Normal/superfluid decision of the 1-D contact model on a grid.
    Phase(PhaseArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Kappa(_) => "kappa",
            Command::Curves(_) => "curves",
            Command::MCheck(_) => "m-check",
            Command::Toy1d(_) => "toy1d",
            Command::Spectrum(_) => "spectrum",
            Command::Phase(_) => "phase",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Kappa(a) => &a.common,
            Command::Curves(a) => &a.common,
            Command::MCheck(a) => &a.common,
            Command::Toy1d(a) => &a.common,
            Command::Spectrum(a) => &a.common,
            Command::Phase(a) => &a.common,
        }
    }

    /// Canonical JSON of the options that determine the output.
    pub fn canonical_config(&self) -> String {
        let value = match self {
            Command::Kappa(a) => serde_json::to_value(a),
            Command::Curves(a) => serde_json::to_value(a),
            Command::MCheck(a) => serde_json::to_value(a),
            Command::Toy1d(a) => serde_json::to_value(a),
            Command::Spectrum(a) => serde_json::to_value(a),
            Command::Phase(a) => serde_json::to_value(a),
        };
        value.map(|v| v.to_string()).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Options shared by every subcommand. None of them enters the config hash.
#[derive(Debug, Args)]
pub struct Common {
    /// File of `key = value` lines using the long option names; command-line flags win.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Output file (standard output when absent).
    #[arg(long, short, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format; defaults to json for `.json` paths and csv otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (falls back to POLARFERMI_JOBS, then to the number of CPUs).
    #[arg(long, value_name = "N")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialName {
    Gaussian,
    Exponential,
    Sampled,
}

#[derive(Debug, Args, Serialize)]
pub struct PotentialArgs {
    /// Built-in profile, or `sampled` together with --potential-file.
    #[arg(long, value_enum, default_value = "gaussian")]
    pub potential: PotentialName,
    /// Prefactor of the built-in profile (negative is attractive).
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub depth: f64,
    /// Length scale of the built-in profile.
    #[arg(long, default_value_t = 1.0)]
    pub width: f64,
    /// Two-column `r,V` CSV for the sampled profile.
    #[arg(long, value_name = "FILE")]
    pub potential_file: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct KappaArgs {
    /// Grid in t, `min:max:count[:log]`.
    #[arg(long, default_value = "0:5:51")]
    pub t_grid: String,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct CurvesArgs {
    /// Comma-separated curve kinds out of i, g, o.
    #[arg(long, default_value = "i,g,o")]
    pub kinds: String,
    /// Grid in t = dmu/T, `min:max:count[:log]`.
    #[arg(long, default_value = "0:5:51")]
    pub t_grid: String,
    #[arg(long, default_value_t = 1.0)]
    pub mu_bar: f64,
    /// Coupling constant multiplying the potential.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct MCheckArgs {
    /// Comma-separated kinds out of m, m_tilde, m_bar.
    #[arg(long, default_value = "m,m_tilde,m_bar")]
    pub kinds: String,
    /// Comma-separated temperatures.
    #[arg(long, default_value = "1e-2,3e-3,1e-3,3e-4,1e-4")]
    pub temperatures: String,
    /// Comma-separated values of t = dmu/T.
    #[arg(long, default_value = "0,1,2,3")]
    pub t_values: String,
    #[arg(long, default_value_t = 1.0)]
    pub mu_bar: f64,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct SolverTolerances {
    /// Relative tolerance of the momentum quadrature, in (0, 1e-2].
    #[arg(long, default_value_t = 1e-12)]
    pub quad_tol: f64,
    /// Relative residual every reported root must satisfy, in (0, 1e-2].
    #[arg(long, default_value_t = 1e-8)]
    pub root_tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct Toy1dArgs {
    /// Contact coupling g.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mu_bar: f64,
    /// Grid in dmu, `min:max:count[:log]`.
    #[arg(long, default_value = "0:0.4:21")]
    pub dmu_grid: String,
    /// Grid in T, `min:max:count[:log]`.
    #[arg(long, default_value = "0.005:0.25:20")]
    pub temp_grid: String,
    /// Comma-separated boundary kinds written to --curves-out.
    #[arg(long, default_value = "i,g,o")]
    pub curve_kinds: String,
    /// Output file for the boundaries in the (dmu, T) plane.
    #[arg(long, value_name = "PATH")]
    #[serde(skip)]
    pub curves_out: Option<PathBuf>,
    #[command(flatten)]
    pub tolerances: SolverTolerances,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mu_bar: f64,
    /// Highest angular momentum channel.
    #[arg(long, default_value_t = 60)]
    pub ell_max: usize,
    /// Coupling constant multiplying the potential.
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct PhaseArgs {
    /// Contact coupling g.
    #[arg(long, default_value_t = 1.0)]
    pub g: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mu_bar: f64,
    /// Grid in dmu, `min:max:count[:log]`.
    #[arg(long, default_value = "0:0.4:11")]
    pub dmu_grid: String,
    /// Grid in T, `min:max:count[:log]`.
    #[arg(long, default_value = "0.01:0.25:11")]
    pub temp_grid: String,
    #[command(flatten)]
    pub tolerances: SolverTolerances,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}
