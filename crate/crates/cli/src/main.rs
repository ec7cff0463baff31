//! `ultravote`: command-line access to the voting-system, ultrafilter,
//! set-limit, topology and sequence-limit checks.
//!
//! Exit codes: 0 when the command succeeds (or its claim holds), 1 when a
//! checked property is violated, 2 for usage errors, unreadable files,
//! malformed input and resource-guard refusals.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod error;
mod output;

use error::CliError;
use output::{Out, Verdict};
use ultravote::verify::DEFAULT_SEED;

#[derive(Parser)]
#[command(name = "ultravote", version, about = "Voting systems, ultrafilters and their limits")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Voting systems: conditions, dictators, weights.
    #[command(subcommand)]
    Vote(VoteCmd),
    /// Elections on preference profiles.
    #[command(subcommand)]
    Elect(ElectCmd),
    /// Ultrafilters on finite index sets.
    #[command(subcommand)]
    Ultra(UltraCmd),
    /// First-order formulas, structures and ultraproducts.
    #[command(subcommand)]
    Los(LosCmd),
    /// Limits of set families along filters.
    #[command(subcommand)]
    Setlim(SetlimCmd),
    /// Diagonals of interval-basis families.
    #[command(subcommand)]
    Diag(DiagCmd),
    /// Finite topologies and preorders.
    #[command(subcommand)]
    Topo(TopoCmd),
    /// Generalized limits of sequences.
    #[command(subcommand)]
    Banach(BanachCmd),
    /// Verification suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

/// Where a voting system comes from.
#[derive(Args, Clone)]
pub struct SystemArgs {
    /// JSON file `{"n": 3, "efficacious": [[0, 1], ...]}`.
    #[arg(long, conflicts_with_all = ["majority", "fano"])]
    pub system: Option<PathBuf>,
    /// Simple majority on this many members.
    #[arg(long, conflicts_with = "fano")]
    pub majority: Option<usize>,
    /// Member whose side wins exact ties (with --majority).
    #[arg(long, requires = "majority")]
    pub chair: Option<usize>,
    /// The seven-member projective-plane system.
    #[arg(long)]
    pub fano: bool,
}

#[derive(Subcommand)]
pub enum VoteCmd {
    /// Check C1, C2, C3, U1 and U2.
    Check(SystemArgs),
    /// Report the dictator, if any.
    Dictator(SystemArgs),
    /// Find representing weights, or build the system of given weights.
    Weights {
        #[command(flatten)]
        source: SystemArgs,
        /// Nonnegative integer weights, e.g. 3,2,2,2.
        #[arg(long, value_delimiter = ',', conflicts_with_all = ["system", "majority", "fano"])]
        weights: Option<Vec<i64>>,
    },
    /// Conditions, dictator and weights of the projective-plane system.
    Fano,
    /// Every C1 ∧ C2 ∧ C3 system on n members is dictatorial.
    Guilbaud {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
pub enum ElectCmd {
    /// Run plurality, two_round or pairwise.
    Run {
        #[arg(long)]
        method: String,
        #[arg(long)]
        profile: PathBuf,
    },
    /// Pairwise tallies.
    Tally {
        #[arg(long)]
        profile: PathBuf,
    },
    /// Collective relation and its shortest cycle.
    Cycles {
        #[arg(long)]
        profile: PathBuf,
        #[command(flatten)]
        source: SystemArgs,
    },
    /// Conditions (S), (T), (V) on a candidate triple.
    StvConditions {
        #[arg(long)]
        profile: PathBuf,
        #[command(flatten)]
        source: SystemArgs,
        /// Three candidate names; required with more than three candidates.
        #[arg(long, value_delimiter = ',')]
        triple: Option<Vec<String>>,
    },
    /// Exact probability of a majority cycle for three candidates.
    Prob {
        #[arg(long)]
        voters: usize,
    },
}

#[derive(Subcommand)]
pub enum UltraCmd {
    /// List the ultrafilters (or all filters) on n points.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        filters: bool,
    },
    /// Grimeisen sum from a JSON description.
    Sum {
        #[arg(long)]
        file: PathBuf,
    },
    /// Ordinal product of principal ultrafilters on |I| and |J| points.
    Product {
        #[arg(long = "i")]
        i_size: usize,
        #[arg(long = "u")]
        u_point: usize,
        #[arg(long = "j")]
        j_size: usize,
        #[arg(long = "v")]
        v_point: usize,
    },
}

#[derive(Subcommand)]
pub enum LosCmd {
    /// Parse a formula and print its canonical form.
    Parse {
        #[arg(long)]
        formula: String,
    },
    /// Evaluate a formula in a structure.
    Eval {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        formula: String,
        /// Variable assignments `x=label`, repeatable.
        #[arg(long = "assign")]
        assign: Vec<String>,
    },
    /// Check the truth lemma on random instances, or on one given instance.
    Check {
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// JSON array of structures.
        #[arg(long, requires_all = ["point", "formula"])]
        family: Option<PathBuf>,
        /// Point of the principal ultrafilter.
        #[arg(long)]
        point: Option<usize>,
        #[arg(long)]
        formula: Option<String>,
        /// Element choices `x=0,1,2` (one index per structure), repeatable.
        #[arg(long = "choose")]
        choose: Vec<String>,
    },
}

#[derive(Subcommand)]
pub enum SetlimCmd {
    /// liminf and limsup along the filter generated by a kernel.
    Limits {
        #[arg(long)]
        family: PathBuf,
        /// Kernel indices; defaults to every index.
        #[arg(long, value_delimiter = ',')]
        kernel: Option<Vec<usize>>,
    },
    /// For every ultrafilter, I[F, L] is efficacious and L is a diagonal.
    DiagonalLemma {
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum DiagCmd {
    /// Build a diagonal of an interval-basis family.
    Build {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        horizon: u64,
        /// Witnesses required at depths up to horizon/2.
        #[arg(long, default_value_t = 2)]
        threshold: usize,
    },
    /// Independently re-check a diagonal written by `diag build --json`.
    Validate {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        diagonal: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum TopoCmd {
    /// Count topologies and preorders on k points.
    Count {
        #[arg(long)]
        k: usize,
    },
    /// Normality and extremal disconnectedness, directly and via the nasse.
    Normal {
        #[arg(long)]
        file: PathBuf,
    },
    /// Topology/preorder round trips, exhaustive up to 4 points or random up to 8.
    Roundtrip {
        #[arg(long)]
        k: usize,
        /// Random preorders instead of exhaustive enumeration.
        #[arg(long)]
        random: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum BanachCmd {
    /// Estimate the generalized limit and check the axioms when exact.
    Check {
        #[arg(long)]
        seq: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Run every acceptance suite.
    All,
}

fn run(cli: Cli) -> Result<Verdict, CliError> {
    let out = Out::new(cli.json);
    match cli.command {
        Command::Vote(c) => commands::vote::run(c, &out),
        Command::Elect(c) => commands::elect::run(c, &out),
        Command::Ultra(c) => commands::ultra::run(c, &out),
        Command::Los(c) => commands::los::run(c, cli.seed, &out),
        Command::Setlim(c) => commands::setlim::run(c, &out),
        Command::Diag(c) => commands::diag::run(c, &out),
        Command::Topo(c) => commands::topo::run(c, cli.seed, &out),
        Command::Banach(c) => commands::banach::run(c, &out),
        Command::Verify(VerifyCmd::All) => commands::verify::run(cli.seed, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Holds) => ExitCode::SUCCESS,
        Ok(Verdict::Violated) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
