use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use fakedp::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match fakedp::execute(&cli) {
        Ok(r) => {
            let out = r.render(cli.json);
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(r.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
