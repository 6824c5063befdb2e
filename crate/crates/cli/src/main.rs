use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use holonomica_cli::{dispatch, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let text = serde_json::to_string_pretty(&out.doc).expect("serializable");
            if writeln!(stdout, "{text}").is_err() {
                return ExitCode::from(2);
            }
            for line in &out.diagnostics {
                eprintln!("{line}");
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit as u8)
        }
    }
}
