mod args;
mod commands;
mod common;

use clap::Parser;

use args::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(a) => commands::simulate::run(a),
        Command::Decode(a) => commands::decode::run(a),
        Command::AnalyzeRmre(a) => commands::analyze::run(a),
        Command::GenCode(a) => commands::gencode::run(a),
    };
    if let Err(e) = result {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
