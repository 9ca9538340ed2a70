use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use projheight_cli::commands::EXIT_INPUT;
use projheight_cli::{exact_cap_from_env, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = match exact_cap_from_env() {
        Ok(cap) => cap,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let out = run(cli, cap);
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    ExitCode::from(out.code as u8)
}
