use clap::Parser;
use spectral_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    println!("{}", out.stdout);
    std::process::exit(out.code);
}
