use clap::Parser;
use gbquad_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("gbquad: {e}");
        std::process::exit(e.exit_code());
    }
}
