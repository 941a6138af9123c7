//! Command-line front end: Betti numbers, verification suites, basis
//! listings, reduction to normal form and stability parameters.

mod commands;
mod error;
mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use strip_homology::{HomologyOptions, DEFAULT_CELL_CAP};

pub use error::{CliError, EXIT_FAILED, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
pub use render::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "strip", version, about = "Homology of disk configurations in an infinite strip")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Directory for cached boundary matrices; caching is off when unset.
    #[arg(long, env = strip_chains::cache::CACHE_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Refuse complexes with more cells than this.
    #[arg(long, default_value_t = DEFAULT_CELL_CAP, value_parser = positive_cap, global = true)]
    pub cap: u128,
}

fn positive_cap(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("the cap must be positive".into()),
        Ok(c) => Ok(c),
        Err(e) => Err(e.to_string()),
    }
}

impl Global {
    pub fn homology_options(&self) -> HomologyOptions {
        HomologyOptions { cap: self.cap, cache_dir: self.cache_dir.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Boundary,
    Basis,
    Relations,
    Decomposition,
    Generation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StyleArg {
    Am,
    Amw,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers of conf(n, w).
    Betti {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w: u64,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        scope: Scope,
        #[arg(long, required_if_eq_any([("scope", "boundary"), ("scope", "basis"), ("scope", "decomposition")]))]
        n: Option<u32>,
        #[arg(long)]
        w: u64,
        /// Degree for the generation check.
        #[arg(long, default_value_t = 1)]
        k: u64,
        #[arg(long, value_enum, default_value_t = StyleArg::Both)]
        style: StyleArg,
        /// Largest label count for generated relation instances.
        #[arg(long, default_value_t = 5)]
        max_labels: usize,
    },
    /// List a basis of H_k(conf(n, w)) as generator words.
    Basis {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = StyleArg::Amw)]
        style: StyleArg,
    },
    /// Rewrite a combination of words into the averaged-filter basis.
    Reduce {
        #[arg(long)]
        w: u64,
        /// A combination such as `W(3)|W(2,1) - 1/2 W(1)|W(3,2)`.
        #[arg(long)]
        expr: String,
        /// Permutation applied first, in cycle notation such as `(1 3)(2 4)`.
        #[arg(long)]
        act: Option<String>,
        /// Also drop words with a bare wheel on at most this many disks.
        #[arg(long)]
        quotient: Option<u64>,
    },
    /// Stability parameters, first order with `--k` or higher order with
    /// `--order` and `--i`.
    Stability {
        #[arg(long)]
        w: u64,
        #[arg(long, conflicts_with_all = ["order", "i"], required_unless_present = "order")]
        k: Option<u64>,
        #[arg(long, requires = "i")]
        order: Option<u64>,
        #[arg(long, requires = "order")]
        i: Option<u64>,
    },
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Outcome {
    match commands::dispatch(cli) {
        Ok(report) => Outcome {
            code: if report.passed { EXIT_OK } else { EXIT_FAILED },
            stdout: report.render(cli.global.format),
            stderr: String::new(),
        },
        Err(e) => Outcome { code: e.code, stdout: String::new(), stderr: format!("error: {}\n", e.message) },
    }
}

/// Parses arguments, including the program name, and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}
