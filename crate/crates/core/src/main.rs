use clap::Parser;
use dirac_core::cli::{run, Cli};

fn main() {
    std::process::exit(run(&Cli::parse()));
}
