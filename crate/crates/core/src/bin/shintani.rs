use clap::Parser;

fn main() {
    std::process::exit(shintani::cli::run(shintani::cli::Cli::parse()));
}
