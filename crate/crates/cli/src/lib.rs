//! Command-line front end for `qess-core`: payoffs, equilibrium scans,
//! ESS checks and invasion studies with table, CSV or JSON output.

pub mod commands;
pub mod error;
pub mod game;
pub mod parse;
pub mod render;

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qess_core::{QuantumStrategy, TacticProfile};

pub use error::{CliError, CliResult};
use game::{PairingSpec, Preset, Scheme};
use render::Format;

#[derive(Debug, Parser)]
#[command(
    name = "qess",
    version,
    about = "Equilibria and evolutionary stability in quantum 2x2 games"
)]
pub struct Cli {
    /// Output format (default depends on the command).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Tie tolerance for payoff comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Payoffs of one strategy or tactic profile.
    Payoff(PayoffArgs),
    /// Equilibria of a tactic game across entanglement weights.
    NeScan(NeScanArgs),
    /// Stability verdict of a fixed profile across entanglement weights.
    EssScan(EssScanArgs),
    /// Full equilibrium report for one candidate.
    EssCheck(EssCheckArgs),
    /// Invasion study of a mutant against D or Q at maximal entanglement.
    Invade(InvadeArgs),
    /// Equilibria of a Battle of the Sexes tactic game.
    Bos(BosArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    /// Built-in payoff matrix.
    #[arg(long, value_enum, conflicts_with = "game")]
    pub preset: Option<Preset>,

    /// TOML game file.
    #[arg(long)]
    pub game: Option<PathBuf>,

    /// Quantization scheme (overrides the game file).
    #[arg(long, value_enum)]
    pub scheme: Option<Scheme>,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Weight |b|^2 of the second component of the initial state.
    #[arg(long)]
    pub b2: Option<f64>,

    /// Which basis pair the initial state superposes.
    #[arg(long, value_enum)]
    pub pairing: Option<PairingSpec>,

    /// Entanglement of the Eisert gate, in [0, pi/2] (default pi/2).
    #[arg(long, value_parser = parse::parse_angle)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct B2GridArgs {
    /// Explicit ascending list of |b|^2 values.
    #[arg(long = "b2", value_delimiter = ',', num_args = 1..)]
    pub values: Option<Vec<f64>>,

    #[arg(long, default_value_t = 0.0)]
    pub b2_min: f64,

    #[arg(long, default_value_t = 1.0)]
    pub b2_max: f64,

    #[arg(long, default_value_t = 11)]
    pub b2_steps: usize,
}

#[derive(Debug, Args)]
pub struct PayoffArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub state: StateArgs,

    /// Row player's unitary: C, D, Q, theta or theta,phi.
    #[arg(long, value_parser = parse::parse_strategy)]
    pub alice: Option<QuantumStrategy>,

    /// Column player's unitary.
    #[arg(long, value_parser = parse::parse_strategy)]
    pub bob: Option<QuantumStrategy>,

    /// Row player's identity probability (mw) or first-strategy probability (classical).
    #[arg(long)]
    pub p: Option<f64>,

    #[arg(long)]
    pub q: Option<f64>,
}

#[derive(Debug, Args)]
pub struct NeScanArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub grid: B2GridArgs,

    #[arg(long, value_enum)]
    pub pairing: Option<PairingSpec>,

    /// Deviation grid size for equilibrium verification.
    #[arg(long, default_value_t = 1001)]
    pub resolution: usize,
}

#[derive(Debug, Args)]
pub struct EssScanArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub grid: B2GridArgs,

    #[arg(long, value_enum)]
    pub pairing: Option<PairingSpec>,

    /// Candidate profile p,q.
    #[arg(long, value_parser = parse::parse_profile, default_value = "0,0")]
    pub star: TacticProfile,

    #[arg(long, default_value_t = 1001)]
    pub resolution: usize,
}

#[derive(Debug, Args)]
pub struct EssCheckArgs {
    #[command(flatten)]
    pub game: GameArgs,
    #[command(flatten)]
    pub state: StateArgs,

    /// Candidate unitary for the Eisert scheme.
    #[arg(long, value_parser = parse::parse_strategy)]
    pub candidate: Option<QuantumStrategy>,

    /// Candidate profile p,q for tactic games.
    #[arg(long, value_parser = parse::parse_profile, default_value = "0,0")]
    pub star: TacticProfile,

    /// Mutant grid size in theta (Eisert).
    #[arg(long, default_value_t = 21)]
    pub theta_steps: usize,

    /// Mutant grid size in phi (Eisert, two-parameter candidates).
    #[arg(long, default_value_t = 11)]
    pub phi_steps: usize,

    #[arg(long, default_value_t = 1001)]
    pub resolution: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    /// One-parameter mutants against D.
    #[value(name = "A", alias = "a")]
    A,
    /// Two-parameter mutants against D.
    #[value(name = "B", alias = "b")]
    B,
    /// Two-parameter mutants against Q.
    #[value(name = "C", alias = "c")]
    C,
}

#[derive(Debug, Args)]
pub struct InvadeArgs {
    #[arg(long, value_enum)]
    pub case: CaseArg,

    /// Mutant rotation angle.
    #[arg(long, value_parser = parse::parse_angle, default_value = "0")]
    pub theta: f64,

    /// Mutant phase; giving it makes the mutant two-parameter.
    #[arg(long, value_parser = parse::parse_angle)]
    pub phi: Option<f64>,

    /// Initial mutant share.
    #[arg(long, default_value_t = 0.01)]
    pub eps: f64,

    #[arg(long, default_value_t = 200)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct BosArgs {
    /// alpha,beta,gamma with alpha > beta > gamma.
    #[arg(long, value_parser = parse::parse_triple, default_value = "3,2,1")]
    pub payoffs: [f64; 3],

    #[arg(long, default_value_t = 0.0)]
    pub b2: f64,

    #[arg(long, value_enum, default_value = "aligned")]
    pub pairing: PairingSpec,

    #[arg(long, default_value_t = 1001)]
    pub resolution: usize,
}

/// Renders the command's output without touching stdout or files.
pub fn execute(cli: &Cli) -> CliResult<String> {
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        return Err(CliError::usage(format!(
            "--tol must be finite and non-negative, got {}",
            cli.tol
        )));
    }
    let ctx = commands::Context {
        format: cli.format,
        tol: cli.tol,
    };
    match &cli.command {
        Command::Payoff(a) => commands::payoff(&ctx, a),
        Command::NeScan(a) => commands::ne_scan(&ctx, a),
        Command::EssScan(a) => commands::ess_scan(&ctx, a),
        Command::EssCheck(a) => commands::ess_check(&ctx, a),
        Command::Invade(a) => commands::invade(&ctx, a),
        Command::Bos(a) => commands::bos(&ctx, a),
    }
}

/// Executes the command and delivers its output; nothing is written when
/// the command fails.
pub fn run(cli: &Cli) -> CliResult<()> {
    let text = execute(cli)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}
