//! Argument parsing. Every registry key is also a `--kebab-case` flag.
//!
//! Precedence, lowest first: built-in defaults, `--config` file,
//! `DUALMODE_OUTPUT_DIR`, flags.

use std::ffi::OsString;
use std::fs;

use clap::error::ErrorKind;
use clap::{Arg, ArgAction, ArgMatches, Command};

use crate::error::CliError;
use crate::params::{Kind, Origin, RawParams, PARAMS};
use crate::spec::{Mode, RunSpec};

pub const OUTPUT_DIR_ENV: &str = "DUALMODE_OUTPUT_DIR";

pub enum Parsed {
    Run(Box<RunSpec>),
    /// Help or version text, printed with exit status 0.
    Print(String),
}

fn about(mode: Mode) -> &'static str {
    match mode {
        Mode::Modes => "Spring constants, normal modes and the validity check of the cantilever",
        Mode::Couplings => "Dressed-spin couplings and the effective alpha, beta",
        Mode::Negativity => "Negativity of the closed two-spin evolution on a time grid",
        Mode::Lindblad => "Master-equation trajectory with decay rates gamma_e, gamma_d",
        Mode::Sweep => "Runs negativity or lindblad over a list of values of one parameter",
        Mode::Validate => "Element-wise comparison of the analytic master-equation solution against RK4",
    }
}

pub fn command() -> Command {
    let mut cmd = Command::new("dualmode")
        .version(crate::spec::VERSION)
        .about("Two NV spins coupled through a dual-mode nanomechanical cantilever")
        .after_help(
            "Values take unit suffixes (15um, 1kHz, 6.3ms, 130GPa, 1e6T/m); a bare number is SI.\n\
             Frequencies are angular rates: 1kHz = 1e3 per second.",
        )
        .subcommand_required(true);
    for mode in Mode::ALL {
        let mut sub = Command::new(mode.name()).about(about(mode)).arg(
            Arg::new("config").long("config").short('c').value_name("FILE").help("key = value file; flags override it"),
        );
        for p in PARAMS.iter().filter(|p| mode.uses(p.scope)) {
            let mut arg = Arg::new(p.key).long(p.key.replace('_', "-")).value_name("VALUE").action(ArgAction::Set);
            let help = match p.default {
                Some(d) => format!("{} [default: {d}]", p.help),
                None => p.help.to_string(),
            };
            arg = arg.help(help);
            arg = if p.kind == Kind::Bool {
                arg.num_args(0..=1).default_missing_value("true")
            } else {
                arg.allow_hyphen_values(true)
            };
            sub = sub.arg(arg);
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

/// Parses arguments and the environment into a run.
pub fn parse<I, T>(args: I, env_output_dir: Option<String>) -> Result<Parsed, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Ok(Parsed::Print(e.to_string()));
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            return Err(CliError::Usage(line.to_string()));
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let mode: Mode = name.parse()?;
    let raw = layers(mode, sub, env_output_dir)?;
    Ok(Parsed::Run(Box::new(RunSpec::new(mode, raw.resolve()?)?)))
}

fn layers(mode: Mode, sub: &ArgMatches, env_output_dir: Option<String>) -> Result<RawParams, CliError> {
    let mut raw = RawParams::defaults();
    if let Some(path) = sub.get_one::<String>("config") {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
        raw.apply_config(&text, path)?;
    }
    if let Some(dir) = env_output_dir.filter(|d| !d.is_empty()) {
        raw.set("output_dir", &dir, Origin::Environment)?;
    }
    for p in PARAMS.iter().filter(|p| mode.uses(p.scope)) {
        if let Some(v) = sub.get_one::<String>(p.key) {
            raw.set(p.key, v, Origin::Flag)?;
        }
    }
    Ok(raw)
}
