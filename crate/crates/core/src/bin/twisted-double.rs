use clap::Parser;
use twisted_double::cli::{main_with, Cli};

fn main() {
    std::process::exit(main_with(Cli::parse()));
}
