mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::Cli;
use commands::{command_name, run};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(rep) => {
            if cli.global.json {
                let mut out = json!({
                    "schema": 1,
                    "command": name,
                    "outcome": rep.outcome.name(),
                });
                if let (Value::Object(dst), Value::Object(src)) = (&mut out, rep.json) {
                    dst.extend(src);
                }
                emit(&format!("{:#}\n", out));
            } else {
                emit(&rep.text);
            }
            ExitCode::from(rep.outcome.code() as u8)
        }
        Err(e) => {
            if cli.global.json {
                let out = json!({ "schema": 1, "command": name, "error": e.to_string() });
                emit(&format!("{:#}\n", out));
            }
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}
