use clap::Parser;

use permchan::cli::{self, Cli};

fn main() {
    let cli = Cli::parse();
    let code = permchan::par::pool().install(|| cli::run(cli));
    std::process::exit(code);
}
