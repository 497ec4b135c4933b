use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

const CONVENTION: &str = "Fidelity convention: every fidelity reported by this tool is the SQUARED \
form F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Texts that define fidelity as the \
square root of this quantity will quote smaller entanglement values.";

#[derive(Debug, Parser)]
#[command(
    name = "sepfid",
    version,
    about = "Fidelity of separability and geometric entanglement measures (squared fidelity convention)",
    after_help = CONVENTION
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Measures of a pure state from its closest product state.
    Pure(SolveArgs),
    /// Measures of a mixed state by convex-roof optimization.
    Mixed(SolveArgs),
    /// Closed-form two-qubit measures from the concurrence.
    Twoqubit(InputArgs),
    /// Fidelity between two states.
    Fidelity(FidelityArgs),
    /// Run the self-check suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Full report document.
    Full,
    /// Headline value only.
    Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone, Args)]
pub struct Knobs {
    /// Seed for every random start.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Number of random restarts.
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Number of decomposition branches (mixed states).
    #[arg(long)]
    pub branches: Option<usize>,
    /// Convergence tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// State document.
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[command(flatten)]
    pub knobs: Knobs,
    /// Treat the state as bipartite across this cut, e.g. `0,1|2` (0-based parties).
    #[arg(long, value_name = "A|B")]
    pub cut: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Full)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Full)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct FidelityArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Second state document.
    #[arg(long = "with", value_name = "FILE")]
    pub other: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Full)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Quick)]
    pub level: Level,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Full)]
    pub format: Format,
}
