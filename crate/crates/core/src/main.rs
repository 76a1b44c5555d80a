use clap::Parser;
use querylab::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
