//! Command-line driver: enumerate, graph, sieve, decompose.

mod cache;
mod commands;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use cache::{default_dir, fingerprint, write_atomic, Cache, CACHE_ENV, VERSION};
pub use commands::{
    cmd_decompose, cmd_enumerate, cmd_graph, cmd_sieve, load_graph, GraphFormat, Report, SieveJob,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] crate::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sslevel",
    version,
    about = "Supersingular isogeny graphs with level structure"
)]
pub struct Cli {
    /// Cache directory (defaults to $SSLEVEL_CACHE_DIR, then the user cache dir).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Build graphs without reading or writing the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List supersingular j-invariants with |Aut| and check the mass formula.
    Enumerate {
        #[arg(short)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build the l-isogeny graph of X_G over F_p-bar.
    Graph {
        #[arg(short)]
        p: u64,
        /// Subgroup spec, e.g. full:1, B0:5, CnsTwist2:-1, gens:N=5;[[1,0],[0,2]].
        #[arg(short = 'G', long = "group")]
        group: String,
        #[arg(short)]
        l: u64,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sieve for rational Hecke eigensystems over the primes in L.
    Sieve {
        #[arg(short)]
        p: u64,
        #[arg(short = 'G', long = "group")]
        group: String,
        #[arg(short = 'L', long = "primes", value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        max_dim: usize,
        /// Sieve inside the subspace new for these covering groups.
        #[arg(long)]
        new_over: Vec<String>,
        #[arg(long)]
        csv: bool,
        /// Also write PREFIX.txt and PREFIX.csv.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dimensions of the Eisenstein, degree-0, old and new parts.
    Decompose {
        #[arg(short)]
        p: u64,
        #[arg(short = 'G', long = "group")]
        group: String,
        /// Groups containing G.
        #[arg(long = "cover")]
        covers: Vec<String>,
        /// Prime for the Hecke-stability check.
        #[arg(short)]
        l: Option<u64>,
    },
}

/// `full` alone is accepted as shorthand for level 1.
fn spec(s: &str) -> String {
    match s.trim() {
        "full" => "full:1".to_string(),
        t => t.to_string(),
    }
}

pub fn run(cli: Cli) -> Result<Report, CliError> {
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::new(cli.cache_dir.unwrap_or_else(default_dir))
    };
    match cli.command {
        Command::Enumerate { p, json } => cmd_enumerate(p, json),
        Command::Graph {
            p,
            group,
            l,
            dot,
            json: _,
            output,
        } => {
            let format = if dot {
                GraphFormat::Dot
            } else {
                GraphFormat::Json
            };
            cmd_graph(&cache, p, &spec(&group), l, format, output)
        }
        Command::Sieve {
            p,
            group,
            primes,
            max_dim,
            new_over,
            csv,
            output,
        } => {
            let new_over: Vec<String> = new_over.iter().map(|s| spec(s)).collect();
            cmd_sieve(
                &cache,
                &SieveJob {
                    p,
                    spec: &spec(&group),
                    primes: &primes,
                    max_dim,
                    new_over: &new_over,
                    csv,
                    output,
                },
            )
        }
        Command::Decompose {
            p,
            group,
            covers,
            l,
        } => {
            let covers: Vec<String> = covers.iter().map(|s| spec(s)).collect();
            cmd_decompose(p, &spec(&group), &covers, l)
        }
    }
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(r) => {
            print!("{}", r.stdout);
            for n in &r.notes {
                eprintln!("{n}");
            }
            r.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
