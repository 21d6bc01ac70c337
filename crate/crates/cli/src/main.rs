//! `powerband` - power-bandwidth tradeoff analysis for fading multiuser
//! relay channels under opportunistic max-rate scheduling.
//!
//! Subcommands: `measures`, `curve`, `simulate`, `compare`. SNR inputs are
//! given in dB and converted to linear internally; spectral efficiencies are
//! exported in b/s/Hz and Eb/N0 in dB (per information bit).
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 numeric or
//! domain error, 3 tolerance failure in `compare`.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

mod commands;
mod output;
mod spec;

use spec::{FadingSpec, Mode, OutputFormat, ScenarioSpec};

/// CLI failure with a well-defined exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config file, bad parameter combinations. Exit 1.
    Usage(String),
    /// Numeric or domain failures from the library. Exit 2.
    Numeric(powerband::Error),
    /// `compare` exceeded its tolerance. Exit 3.
    Tolerance { max_gap: f64, tolerance: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Tolerance { .. } => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Numeric(err) => write!(f, "{err}"),
            CliError::Tolerance { max_gap, tolerance } => write!(
                f,
                "maximum relative gap {max_gap:.6e} exceeds tolerance {tolerance:.6e}"
            ),
        }
    }
}

impl From<powerband::Error> for CliError {
    fn from(err: powerband::Error) -> Self {
        match err {
            powerband::Error::Config(msg) => CliError::Usage(msg),
            other => CliError::Numeric(other),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "powerband",
    version,
    about = "Energy-efficiency / spectral-efficiency tradeoffs of opportunistically \
             scheduled multiuser relay channels",
    long_about = "Computes, cross-validates and exports the power-bandwidth tradeoff of a \
                  fading multiuser cell served either directly or over a two-hop relay, \
                  with the instantaneously best of K users scheduled in every slot.\n\n\
                  Conventions: SNR flags are in dB and converted to linear internally; \
                  spectral efficiency is exported in b/s/Hz; Eb/N0 is energy per \
                  information bit over noise density, 10*log10 for the dB view.\n\n\
                  Exit codes: 0 success, 1 usage/config error, 2 numeric/domain error, \
                  3 tolerance failure."
)]
struct Cli {
    #[command(subcommand)]
    command: CommandKind,
}

#[derive(Subcommand)]
enum CommandKind {
    /// Closed-form and numeric-limit tradeoff measures with their gaps
    Measures(ScenarioArgs),
    /// Analytic spectral-efficiency vs Eb/N0 curve
    Curve(ScenarioArgs),
    /// Monte Carlo spectral-efficiency vs Eb/N0 curve
    Simulate(ScenarioArgs),
    /// Analytic vs Monte Carlo comparison with a tolerance gate
    Compare(ScenarioArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Transmission protocol: direct, relay or awgn
    #[arg(long)]
    mode: Option<Mode>,

    /// Number of users K
    #[arg(long)]
    k: Option<usize>,

    /// Base-to-user SNR ratio (base-link SNR = alpha_b * reference SNR)
    #[arg(long = "alpha-b")]
    alpha_b: Option<f64>,

    /// Relay-to-user SNR ratio (access-link SNR = alpha_r * reference SNR)
    #[arg(long = "alpha-r")]
    alpha_r: Option<f64>,

    /// Backhaul time share beta_b; the access share is always 1 - beta_b
    #[arg(long = "beta-b")]
    beta_b: Option<f64>,

    /// Fading family: rayleigh | nakagami-m:<m> | weibull:<shape>
    #[arg(long)]
    fading: Option<FadingSpec>,

    /// Lower edge of the SNR grid in dB
    #[arg(long = "snr-min-db", allow_negative_numbers = true)]
    snr_min_db: Option<f64>,

    /// Upper edge of the SNR grid in dB
    #[arg(long = "snr-max-db", allow_negative_numbers = true)]
    snr_max_db: Option<f64>,

    /// Number of grid points
    #[arg(long)]
    points: Option<usize>,

    /// Monte Carlo samples per grid point
    #[arg(long)]
    samples: Option<usize>,

    /// Master seed; per-point seeds derive from it deterministically
    #[arg(long)]
    seed: Option<u64>,

    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format: csv or json (measures prints aligned text for csv)
    #[arg(long)]
    format: Option<OutputFormat>,

    /// Maximum allowed relative gap for compare, exit 3 beyond it
    #[arg(long)]
    tolerance: Option<f64>,

    /// Scenario preset: fig2 (relay, beta_b=1/3), fig3 (1/2), fig4 (2/3)
    #[arg(long)]
    preset: Option<String>,

    /// Config file of key=value lines ('#' comments); flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

impl ScenarioArgs {
    /// Defaults, then config file, then preset, then explicit flags.
    fn resolve(&self) -> Result<ScenarioSpec, CliError> {
        let mut spec = ScenarioSpec::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config `{}`: {e}", path.display()))
            })?;
            spec.apply_config_text(&text)?;
        }
        if let Some(preset) = &self.preset {
            spec.mode = Mode::Relay;
            spec.beta_b = match preset.as_str() {
                "fig2" => 1.0 / 3.0,
                "fig3" => 0.5,
                "fig4" => 2.0 / 3.0,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown preset `{other}` (expected fig2, fig3 or fig4)"
                    )))
                }
            };
        }
        if let Some(mode) = self.mode {
            spec.mode = mode;
        }
        if let Some(k) = self.k {
            spec.k = k;
        }
        if let Some(v) = self.alpha_b {
            spec.alpha_b = v;
        }
        if let Some(v) = self.alpha_r {
            spec.alpha_r = v;
        }
        if let Some(v) = self.beta_b {
            spec.beta_b = v;
        }
        if let Some(v) = &self.fading {
            spec.fading = v.clone();
        }
        if let Some(v) = self.snr_min_db {
            spec.snr_min_db = v;
        }
        if let Some(v) = self.snr_max_db {
            spec.snr_max_db = v;
        }
        if let Some(v) = self.points {
            spec.points = v;
        }
        if let Some(v) = self.samples {
            spec.samples = v;
        }
        if let Some(v) = self.seed {
            spec.seed = v;
        }
        if let Some(v) = &self.out {
            spec.out = Some(v.clone());
        }
        if let Some(v) = self.format {
            spec.format = v;
        }
        if let Some(v) = self.tolerance {
            spec.tolerance = v;
        }
        spec.validate_common()?;
        Ok(spec)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        CommandKind::Measures(args) => commands::measures(&args.resolve()?),
        CommandKind::Curve(args) => commands::curve(&args.resolve()?),
        CommandKind::Simulate(args) => commands::simulate(&args.resolve()?),
        CommandKind::Compare(args) => commands::compare(&args.resolve()?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let _ = err.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
