use clap::Parser;
use galkit::cli::{run, Cli};
use std::io::Write;

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if !outcome.stdout.is_empty() {
        print!("{}", outcome.stdout);
    }
    if !outcome.stderr.is_empty() {
        let _ = write!(std::io::stderr(), "{}", outcome.stderr);
    }
    std::process::exit(outcome.exit_code);
}
