use std::process::ExitCode;

use brauer_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let doc = if cli.pretty {
                serde_json::to_string_pretty(&out.envelope)
            } else {
                serde_json::to_string(&out.envelope)
            };
            println!("{}", doc.expect("envelopes serialize"));
            if let Some(why) = &out.failure {
                eprintln!("brauer: {why}");
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            println!("{}", e.to_json());
            eprintln!("brauer: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
