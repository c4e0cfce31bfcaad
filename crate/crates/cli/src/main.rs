//! `ekr`: bounds, checks, enumeration and certificates for intersecting
//! families of words.
//!
//! Exit codes: 0 the property holds, 1 it fails, 2 usage or input error,
//! 3 search budget exhausted.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use ekr_words::search::Limits;
use ekr_words::verify::Theorem;

#[derive(Debug, Parser)]
#[command(
    name = "ekr",
    version,
    about = "Intersecting families of words over Z_q"
)]
struct Cli {
    /// Progress and timing on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
struct Shape {
    /// Alphabet size.
    #[arg(short, value_parser = clap::value_parser!(u8).range(2..))]
    q: u8,
    /// Word length.
    #[arg(short, value_parser = clap::value_parser!(u16).range(1..))]
    m: u16,
}

#[derive(Debug, Args, Clone, Copy)]
struct Budgets {
    /// Worker threads for the search; never changes the output.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    workers: u16,
    /// Node budget; exceeding it exits with status 3.
    #[arg(long, default_value_t = 1_000_000_000)]
    node_budget: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 300)]
    time_budget: u64,
}

impl Budgets {
    fn limits(&self) -> Limits {
        Limits {
            node_budget: self.node_budget,
            time_budget: Duration::from_secs(self.time_budget),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the maximum size q^(m-1) and the number of stars q*m.
    Bound {
        #[command(flatten)]
        shape: Shape,
    },
    /// Analyse a family file.
    Check {
        path: PathBuf,
        /// Intersection order to test.
        #[arg(short, default_value_t = 2, value_parser = clap::value_parser!(u16).range(2..))]
        r: u16,
        /// Emit a JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate maximum r-wise intersecting families.
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        #[arg(short, default_value_t = 2, value_parser = clap::value_parser!(u16).range(2..))]
        r: u16,
        /// Only report the number of families.
        #[arg(long, conflicts_with = "first_nonstar")]
        count_only: bool,
        /// Stop at the lexicographically first maximum family that is not a star.
        #[arg(long)]
        first_nonstar: bool,
        /// Write the family lines here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Exhaustively certify thm2, thm3, count-q2 or lemma1 at (q, m).
    Verify {
        #[arg(value_parser = parse_theorem)]
        theorem: Theorem,
        /// Alphabet size; defaults to 2 for thm3 and count-q2.
        #[arg(short, value_parser = clap::value_parser!(u8).range(2..))]
        q: Option<u8>,
        #[arg(short, value_parser = clap::value_parser!(u16).range(1..))]
        m: u16,
        /// Write the certificate document here.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Write all q*m stars as family files.
    Stars {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e: ekr_words::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verbose = cli.verbose > 0;
    let outcome = match cli.command {
        Command::Bound { shape } => commands::bound(shape.q, shape.m as usize),
        Command::Check { path, r, json } => commands::check(&path, r as usize, json),
        Command::Enumerate {
            shape,
            r,
            count_only,
            first_nonstar,
            out,
            budgets,
        } => commands::enumerate(commands::EnumerateArgs {
            q: shape.q,
            m: shape.m as usize,
            r: r as usize,
            count_only,
            first_nonstar,
            out,
            workers: budgets.workers as usize,
            limits: budgets.limits(),
            verbose,
        }),
        Command::Verify {
            theorem,
            q,
            m,
            cert,
            budgets,
        } => commands::verify(commands::VerifyArgs {
            theorem,
            q,
            m: m as usize,
            cert,
            workers: budgets.workers as usize,
            limits: budgets.limits(),
            verbose,
        }),
        Command::Stars { shape, out_dir } => commands::stars(shape.q, shape.m as usize, &out_dir),
    };
    match outcome {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
