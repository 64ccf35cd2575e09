//! Command-line front end.
//!
//! `llcrack <command> [--config FILE] [--key value ...]`. Settings come
//! from an optional `key = value` file; any key may also be given as a
//! flag, and flags override the file.

mod commands;
mod config;
mod verify;

use clap::{Arg, ArgAction, Command};
use config::{ConfigError, RunConfig, KEYS};
use std::path::PathBuf;
use std::process::ExitCode;

pub const COMMANDS: [&str; 6] = ["constants", "sweep", "verify", "perturb", "weightfn", "kernel"];

pub enum Failure {
    Config(ConfigError),
    Compute(llcrack::error::Error),
    Io(std::io::Error),
    ChecksFailed(usize),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<llcrack::error::Error> for Failure {
    fn from(e: llcrack::error::Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn cli() -> Command {
    let mut cmd = Command::new("llcrack")
        .about("Front-perturbation constants, weight functions and wavy-front SIF changes for interfacial cracks")
        .arg(Arg::new("command").required(true).value_parser(COMMANDS))
        .arg(Arg::new("config").long("config").short('c').value_name("FILE").value_parser(clap::value_parser!(PathBuf)));
    for (key, help) in KEYS {
        cmd = cmd.arg(Arg::new(*key).long(*key).value_name("VALUE").help(*help).action(ArgAction::Set).allow_hyphen_values(true));
    }
    cmd
}

fn assemble(m: &clap::ArgMatches) -> Result<RunConfig, ConfigError> {
    let mut cfg = match m.get_one::<PathBuf>("config") {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    for (key, _) in KEYS {
        if let Some(v) = m.get_one::<String>(key) {
            cfg.set(key, v);
        }
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let m = match cli().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let command = m.get_one::<String>("command").expect("required").clone();
    let result = assemble(&m).map_err(Failure::from).and_then(|cfg| commands::run(&command, &cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("config error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("computation error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("i/o error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::ChecksFailed(n)) => {
            eprintln!("{n} check(s) failed");
            ExitCode::from(1)
        }
    }
}
