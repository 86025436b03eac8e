use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "cayley",
    version,
    about = "Exact solutions of the Cayley cubic and related recurrences"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Cap on quadratic solves for search and classify.
    #[arg(long, global = true, env = "CAYLEY_BUDGET", default_value_t = cayley_core::search::DEFAULT_BUDGET)]
    pub budget: u128,
    /// Print formula corrections to stderr when an affected command runs.
    #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set)]
    pub note_corrections: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate C_s at a triple.
    Verify {
        #[arg(long)]
        s: BigInt,
        #[arg(long, value_parser = parse_triple)]
        triple: [BigInt; 3],
    },
    /// The R-family triple (R_n(b), R_{n+m}(b), R_m(b)).
    Family {
        #[arg(long)]
        s: BigInt,
        #[arg(long)]
        b: BigInt,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Conjugation graph around a solution.
    Graph {
        #[arg(long)]
        s: BigInt,
        #[arg(long, value_parser = parse_triple)]
        triple: [BigInt; 3],
        #[arg(long)]
        bound: BigInt,
    },
    /// Reduction trace down to a singular or base triple.
    Reduce {
        #[arg(long)]
        s: BigInt,
        #[arg(long, value_parser = parse_triple)]
        triple: [BigInt; 3],
    },
    /// z = R_n(y), a = R*_{n-1}(y) solving z² − (y²−s²)a² = s².
    PellOne {
        #[arg(long)]
        s: BigInt,
        #[arg(long)]
        y: BigInt,
        /// First index.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Number of consecutive indices.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// z = R_m(p), a = s(R_{n+m}(p) − R_{|n−m|}(p))/2 solving a² − dz² = −s²d.
    PellTwo {
        #[arg(long)]
        s: BigInt,
        #[arg(long)]
        p: BigInt,
        #[arg(long)]
        n: usize,
        /// First value of m.
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Number of consecutive values of m.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Exhaustive scan of z ≤ bound.
    PellOracle {
        #[arg(long)]
        d: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        rhs: BigInt,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value = "z2-da2")]
        form: cayley_core::PellForm,
        /// Keep solutions with a = 0.
        #[arg(long)]
        include_zero: bool,
    },
    /// All solutions a ≤ b ≤ c ≤ bound.
    Search {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Enumerate and tag base, R-family, component, isolated and frontier-limited solutions.
    Classify {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Markov triples reachable from (1,1,1).
    MarkovTree {
        #[arg(long)]
        depth: usize,
    },
    /// Continuants of a word; with --beta, the sequence K̆(α^k β) for α = word.
    Continuant {
        /// Comma-separated entries; omit for the empty word.
        #[arg(long, value_delimiter = ',')]
        word: Vec<u64>,
        /// Comma-separated entries; `--beta` alone gives the empty word.
        #[arg(long, value_delimiter = ',', num_args = 0..=1)]
        beta: Option<Vec<u64>>,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Compare continuant sequences against R-sequences; exits 1 on any match with s ≥ 2.
    RMatch {
        #[arg(long, default_value_t = cayley_core::markov::DEFAULT_MAX_ENTRY)]
        max_entry: u64,
        #[arg(long, default_value_t = cayley_core::markov::DEFAULT_MAX_LEN)]
        max_len: usize,
        #[arg(long, default_value_t = cayley_core::markov::DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
}

fn parse_triple(s: &str) -> Result<[BigInt; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected a,b,c but got {s:?}"));
    };
    let int = |p: &str| p.parse::<BigInt>().map_err(|e| format!("{p:?}: {e}"));
    Ok([int(a)?, int(b)?, int(c)?])
}

/// How a command finished when it did not hit an error.
pub enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = commands::run(&cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|cause| {
        cause
            .downcast_ref::<io::Error>()
            .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || cause
                .downcast_ref::<csv::Error>()
                .is_some_and(|c| matches!(c.kind(), csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe))
    })
}
