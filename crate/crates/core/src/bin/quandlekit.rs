use std::io::Write;

use clap::Parser;
use quandlekit::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let (code, out) = run(&cli);
    if !out.is_empty() {
        // a closed pipe is not worth a panic
        let _ = writeln!(std::io::stdout(), "{out}");
    }
    std::process::exit(code);
}
