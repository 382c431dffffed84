//! Command-line front end: workspace files in, reports out.

pub mod commands;
pub mod report;
pub mod workspace;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub use commands::{cmd_build_q, cmd_finite_check, cmd_homspace, cmd_search, cmd_validate, Route};
pub use report::Report;

#[derive(Debug, Parser)]
#[command(name = "dirac", version, about = "Exact checks for Dirac Lie groups, their homogeneous spaces and finite models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here and print a summary instead.
    #[arg(long, global = true)]
    pub report_out: Option<PathBuf>,
    /// Print nothing on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Record wall-clock time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check all invariants of the triple.
    Validate { path: PathBuf },
    /// Build the quadratic triple (d×d*, g, q).
    BuildQ { path: PathBuf },
    /// Homogeneous-space fiber for the subspace named `c`.
    Homspace {
        path: PathBuf,
        c: String,
        #[command(flatten)]
        route: RouteArgs,
    },
    /// Enumerate coisotropic data spanned by `k` and subsets of the candidates.
    Search {
        path: PathBuf,
        #[arg(long)]
        k: String,
        #[arg(long)]
        candidates: String,
        #[arg(long)]
        max_subset_size: Option<usize>,
    },
    /// Exhaustive finite-group model checks.
    FiniteCheck { path: PathBuf },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct RouteArgs {
    #[arg(long)]
    pub via_q: bool,
    #[arg(long)]
    pub via_dbeta: bool,
    #[arg(long)]
    pub both: bool,
}

impl RouteArgs {
    pub fn route(&self) -> Route {
        if self.both {
            Route::Both
        } else if self.via_q {
            Route::ViaQ
        } else {
            Route::ViaDbeta
        }
    }
}

fn path_of(c: &Command) -> &PathBuf {
    match c {
        Command::Validate { path } | Command::BuildQ { path } | Command::FiniteCheck { path } => path,
        Command::Homspace { path, .. } | Command::Search { path, .. } => path,
    }
}

/// Runs one command and returns the exit code: 0 pass, 1 checks failed, 2 input error.
pub fn run(cli: &Cli) -> i32 {
    let path = path_of(&cli.command);
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return 2;
        }
    };
    let start = Instant::now();
    let result = match &cli.command {
        Command::Validate { .. } => cmd_validate(&text),
        Command::BuildQ { .. } => cmd_build_q(&text),
        Command::Homspace { c, route, .. } => cmd_homspace(&text, c, route.route()),
        Command::Search { k, candidates, max_subset_size, .. } => cmd_search(&text, k, candidates, *max_subset_size),
        Command::FiniteCheck { .. } => cmd_finite_check(&text),
    };
    let mut report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    if let Some(out) = &cli.report_out {
        if let Err(e) = std::fs::write(out, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", out.display());
            return 2;
        }
        if !cli.quiet {
            print!("{}", report.human());
        }
    } else if !cli.quiet {
        print!("{}", report.to_json());
    }
    if report.passed {
        0
    } else {
        1
    }
}
