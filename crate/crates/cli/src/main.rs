//! `votepower` — voting-power analysis of simple voting games from the
//! command line: exact power measures, postulate audits, game transforms,
//! Monte-Carlo estimates and DOT exports of the division lattice.
//!
//! Exit codes: 0 success (and, for `audit`, every audit passed); 1 at least
//! one audit failed; 2 usage or parse error; 3 a size cap was exceeded.

mod audit;
mod compute;
mod dot;
mod estimate;
mod gamespec;
mod transform;

use clap::{Args, Parser, Subcommand, ValueEnum};
use votepower::Error;

/// Process-level failure, mapped onto exit codes in `main`.
#[derive(Debug)]
pub enum Failure {
    /// Bad input of any kind: flags, game text, profiles. Exit 2.
    Usage(String),
    /// A player-count cap was exceeded. Exit 3.
    SizeLimit(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit { .. } => Failure::SizeLimit(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "votepower",
    version,
    about = "Exact voting-power measures, postulate audits and lattice tools for simple voting games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute power measures for the players of a game.
    Compute(ComputeArgs),
    /// Audit measures against the voting-power postulates.
    Audit(AuditArgs),
    /// Apply a game transformation and print the resulting game.
    Transform(TransformArgs),
    /// Estimate efficacy scores or the recursive measure by random walks.
    Estimate(EstimateArgs),
    /// Export the division lattice as a DOT digraph.
    Lattice(LatticeArgs),
}

/// How a game is named on the command line: the weighted form
/// `"quota;w1,w2,..."`, a JSON document `{"n":..,"winning":[[..]..]}` with
/// 1-indexed players, or a path to a file holding either.
#[derive(Args)]
struct GameArg {
    /// Game description or path to one.
    #[arg(long)]
    game: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Human,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Human,
    Jsonl,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum DocFormat {
    Human,
    Json,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    game: GameArg,
    /// Comma-separated measures to compute: rm, pb, ss.
    #[arg(long, default_value = "rm,pb,ss")]
    measure: String,
    /// Yes-vote probabilities `p1,p2,...` (fractions or decimals); default
    /// equiprobable. The permutation index only supports the default.
    #[arg(long)]
    profile: Option<String>,
    /// Restrict the report to one player (1-indexed).
    #[arg(long)]
    player: Option<usize>,
    #[arg(long, value_enum, default_value_t = TableFormat::Human)]
    format: TableFormat,
    /// Player-count cap for the permutation index.
    #[arg(long, default_value_t = votepower::measures::DEFAULT_SS_CAP)]
    ss_cap: usize,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    game: GameArg,
    /// Comma-separated measures to audit: rm, pb, ss.
    #[arg(long, default_value = "rm")]
    measure: String,
    /// Comma-separated postulate ids (e.g. iso,dum-1,add-2) or "all".
    #[arg(long, default_value = "all")]
    postulate: String,
    #[arg(long, value_enum, default_value_t = ReportFormat::Human)]
    format: ReportFormat,
    /// Player-count cap for the permutation index.
    #[arg(long, default_value_t = votepower::measures::DEFAULT_SS_CAP)]
    ss_cap: usize,
    /// Permutations sampled by the relabelling audit above its exhaustive
    /// limit.
    #[arg(long, default_value_t = 24)]
    iso_samples: usize,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    game: GameArg,
    /// Transformation to apply.
    #[arg(long, value_enum)]
    op: TransformOp,
    /// Players the transformation acts on, 1-indexed: donor,recipient for
    /// donate; annexer,annexed for bloc; the two quarrellers for quarrel.
    /// The add-* transforms take no players.
    #[arg(long)]
    players: Option<String>,
    #[arg(long, value_enum, default_value_t = DocFormat::Human)]
    format: DocFormat,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TransformOp {
    AddDummy,
    Donate,
    Bloc,
    Quarrel,
    AddYesBlocker,
    AddNoBlocker,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    game: GameArg,
    /// Player whose power or efficacy is estimated (1-indexed).
    #[arg(long)]
    player: usize,
    /// Start division for a single-score walk estimate: `empty`, `full`,
    /// `134`, or `{1,3,11}`. Without it the whole measure is estimated.
    #[arg(long)]
    division: Option<String>,
    /// Side of the walk (`plus` or `minus`); required with --division.
    #[arg(long)]
    sign: Option<String>,
    /// Trial budget.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Seed for the reproducible generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker streams for the measure estimate.
    #[arg(long, default_value_t = 1)]
    workers: u64,
    #[arg(long, value_enum, default_value_t = DocFormat::Human)]
    format: DocFormat,
}

#[derive(Args)]
struct LatticeArgs {
    #[command(flatten)]
    game: GameArg,
    /// Annotate every node with this player's efficacy score (1-indexed).
    #[arg(long)]
    player: Option<usize>,
}

fn main() {
    // Restore the default SIGPIPE disposition so that piping into a pager
    // or `head` terminates the process quietly instead of panicking when
    // stdout closes mid-stream.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
        Err(Failure::SizeLimit(message)) => {
            eprintln!("error: {message}");
            std::process::exit(3);
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Compute(args) => compute::run(args),
        Command::Audit(args) => audit::run(args),
        Command::Transform(args) => transform::run(args),
        Command::Estimate(args) => estimate::run(args),
        Command::Lattice(args) => dot::run(args),
    }
}

/// Shared: a parsed game plus its display names.
pub(crate) struct LoadedGame {
    pub game: votepower::Game,
    pub names: Vec<String>,
}

pub(crate) fn load_game(arg: &GameArg) -> Result<LoadedGame, Failure> {
    let spec = gamespec::parse_game_spec(&arg.game).map_err(Failure::Usage)?;
    let cap = gamespec::resolve_cap()?;
    let game = spec.to_game(cap)?;
    let names = spec.names();
    Ok(LoadedGame { game, names })
}

/// Parses a 1-indexed player argument.
pub(crate) fn parse_player(n: usize, player: usize) -> Result<usize, Failure> {
    if player == 0 || player > n {
        return Err(Failure::Usage(format!(
            "player {player} out of range 1..={n}"
        )));
    }
    Ok(player - 1)
}
