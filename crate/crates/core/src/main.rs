use clap::Parser;
use colgraph::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
