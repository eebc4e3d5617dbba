use clap::Parser;

use equichern_cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let (out, code) = execute(&cli);
    if code == 2 {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
