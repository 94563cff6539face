//! `markov`: command-line front end for the markov-fractions library.

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use markov_fractions::{DyadicRational, Fraction};
use num_bigint::BigUint;

use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "markov",
    version,
    about = "Markov fractions, exceptional slopes and their Diophantine invariants"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for parallel enumeration; never changes the output.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QmarkMethod {
    Farey,
    Salem,
    Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WordKind {
    Const,
    Alternating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EquationKind {
    Markov,
    Quadric,
    X3,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the vertices of the Markov tree breadth first.
    Enumerate {
        #[arg(long)]
        depth: u32,
    },
    /// The Markov fraction attached to a rational in [0, 1].
    Mu { x: Fraction },
    /// The Drezet-Le Potier value at a dyadic rational.
    Epsilon { x: DyadicRational },
    /// Membership and bundle invariants of a slope.
    Slope { x: Fraction },
    /// Minkowski's question mark function at a rational in [0, 1].
    Qmark {
        x: Fraction,
        #[arg(long, value_enum, default_value_t = QmarkMethod::Farey)]
        method: QmarkMethod,
    },
    /// Run the invariant suite and print per-invariant pass counts.
    Verify {
        #[arg(long)]
        depth: u32,
    },
    /// Approximation constant inf b^2 |x - a/b|.
    ApproxConst { x: Fraction },
    /// The maximal interval around a Markov fraction free of other ones.
    Interval {
        x: Fraction,
        #[arg(long)]
        freeness_bound: Option<BigUint>,
    },
    /// Enclosure of the truncated McShane sum.
    Mcshane {
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        precision: u32,
    },
    /// Enclosure of the truncated saltus sum for the Springborn function.
    Saltus {
        x: Fraction,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        precision: u32,
    },
    /// Running estimate of ln(ln q_n) / n along a path.
    Lyapunov {
        #[arg(long, value_enum)]
        word: WordKind,
        #[arg(long)]
        steps: usize,
    },
    /// Search the tree for two fractions sharing a denominator.
    Unicity {
        #[arg(long)]
        depth: u32,
    },
    /// Solutions of a generalized Markov equation reachable by flips.
    Triples {
        #[arg(long, value_enum)]
        equation: EquationKind,
        #[arg(long)]
        depth: u32,
    },
    /// All x in [0, q) with x^2 + 1 = 0 (mod q).
    Congruence { q: BigUint },
    /// Samples of the Springborn step function truncated at a depth.
    PlotMu {
        #[arg(long)]
        grid: u32,
        #[arg(long)]
        depth: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    commands::run(cli.command, cli.format)
}
