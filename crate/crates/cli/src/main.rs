use std::io::Write;

use clap::Parser;

fn main() {
    let cli = krsl_cli::Cli::parse();
    let out = krsl_cli::run(&cli);
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
