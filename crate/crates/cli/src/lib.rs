//! Command-line front end for the almost monomial toolkit.
//!
//! Each subcommand is a plain function returning a [`Report`], so tests can
//! drive the CLI without spawning a process.

pub mod commands;
pub mod corpus;
pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{
    cmd_check, cmd_corpus, cmd_sn_certify, cmd_subgroups, cmd_table, cmd_theorem1, Options,
};
pub use corpus::{default_corpus, load_corpus, CorpusEntry};
pub use report::Report;
pub use spec::GroupSpec;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] almono_core::Error),
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("{0}")]
    Input(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "almono",
    version,
    about = "Almost monomial and monomial tests for finite permutation groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Omit the elapsed-time line from text output.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Builtin group (S5, A6, SL2(3), "cyclic 6", ...) or a JSON generator file.
    #[arg(required = true, num_args = 1..)]
    pub group: Vec<String>,
    /// Refuse groups larger than this order.
    #[arg(long, default_value_t = almono_core::DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide almost monomial and monomial.
    Check {
        #[command(flatten)]
        group: GroupArgs,
        /// Stop scanning once every pair is separated.
        #[arg(long)]
        fast: bool,
        /// List a witness for every ordered pair.
        #[arg(long)]
        witnesses: bool,
    },
    /// Print the character table.
    Table {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// List subgroups up to conjugacy.
    Subgroups {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Certify that S_n is almost monomial through Kostka numbers.
    SnCertify {
        n: usize,
        /// List the witness for every pair.
        #[arg(long)]
        witnesses: bool,
    },
    /// Search for vanishing-order patterns violating holomorphy.
    Theorem1 {
        #[command(flatten)]
        group: GroupArgs,
        /// Orders range over [-bound, bound].
        #[arg(long, default_value_t = almono_core::lfun::DEFAULT_BOUND)]
        bound: i64,
        /// Maximum number of search nodes.
        #[arg(long, default_value_t = almono_core::lfun::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check groups against expected verdicts.
    Corpus {
        /// JSON array of {"group", "almost_monomial", "monomial"?}; defaults to the builtin list.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = almono_core::DEFAULT_CAP)]
        cap: u64,
        #[arg(long)]
        fast: bool,
    },
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let mut opts = Options::default();
    match &cli.command {
        Command::Check {
            group,
            fast,
            witnesses,
        } => {
            opts.cap = group.cap;
            opts.fast = *fast;
            opts.witnesses = *witnesses;
            cmd_check(&GroupSpec::parse(&group.group)?, &opts)
        }
        Command::Table { group } => {
            opts.cap = group.cap;
            cmd_table(&GroupSpec::parse(&group.group)?, &opts)
        }
        Command::Subgroups { group } => {
            opts.cap = group.cap;
            cmd_subgroups(&GroupSpec::parse(&group.group)?, &opts)
        }
        Command::SnCertify { n, witnesses } => {
            opts.witnesses = *witnesses;
            cmd_sn_certify(*n, &opts)
        }
        Command::Theorem1 {
            group,
            bound,
            budget,
        } => {
            opts.cap = group.cap;
            opts.bound = *bound;
            opts.budget = *budget;
            cmd_theorem1(&GroupSpec::parse(&group.group)?, &opts)
        }
        Command::Corpus { corpus, cap, fast } => {
            opts.cap = *cap;
            opts.fast = *fast;
            let entries = match corpus {
                Some(path) => load_corpus(path)?,
                None => default_corpus(),
            };
            cmd_corpus(&entries, &opts)
        }
    }
}

/// Full CLI behaviour: returns stdout, stderr and the exit code.
/// Exit codes: 0 success (or almost monomial), 1 negative verdict or
/// corpus mismatch, 2 usage or input error.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                (e.to_string(), String::new(), 0)
            } else {
                (String::new(), e.to_string(), 2)
            };
        }
    };
    if let Some(t) = cli.threads {
        // A global pool can only be installed once per process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global();
    }
    match execute(&cli) {
        Ok(report) => {
            let out = if cli.json {
                let mut s = report.to_json();
                s.push('\n');
                s
            } else {
                report.to_text(!cli.no_timing)
            };
            (out, String::new(), report.exit_code)
        }
        Err(e) => (String::new(), format!("error: {e}\n"), 2),
    }
}
