//! Command-line front end for the eisbound library.

mod commands;
mod config;
mod error;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use config::{Cli, Command, RunConfig};
use error::CliError;

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<commands::Outcome, CliError> {
    match &cli.command {
        Command::Classgroup => commands::classgroup(cfg),
        Command::Cusps { class } => commands::cusps(cfg, *class),
        Command::Chars { inf_type } => commands::chars(cfg, inf_type),
        Command::Lvalue => commands::lvalue(cfg),
        Command::Eis { samples, seed, hecke_norm } => commands::eis(cfg, *samples, *seed, *hecke_norm),
        Command::Check => commands::check(cfg),
        Command::Bound => commands::bound(cfg),
        Command::Example67 => commands::example(cfg),
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn render(value: &serde_json::Value, pretty: bool) -> String {
    if pretty {
        render::pretty(value)
    } else {
        let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors, including unknown subcommands.
    let cli = Cli::parse();
    let pretty = cli.common.pretty;
    let result = RunConfig::from_args(&cli.common).and_then(|cfg| {
        let outcome = dispatch(&cli, &cfg)?;
        emit(&render(&outcome.value, cfg.pretty), cfg.out.as_deref())?;
        Ok(outcome.verified)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let record = json!({ "error": e.record() });
            let _ = std::io::stdout().write_all(render(&record, pretty).as_bytes());
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
