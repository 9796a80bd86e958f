//! Run specification and the metadata header that precedes every output.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::CliError;
use crate::params::{lookup, Kind, Params, RawParams, Scope, Value, PARAMS};
use crate::units::parse_quantity;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
const MAGIC: &str = "dualmode";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Modes,
    Couplings,
    Negativity,
    Lindblad,
    Sweep,
    Validate,
}

impl Mode {
    pub const ALL: [Mode; 6] =
        [Mode::Modes, Mode::Couplings, Mode::Negativity, Mode::Lindblad, Mode::Sweep, Mode::Validate];

    pub fn uses(self, scope: Scope) -> bool {
        match scope {
            Scope::All => true,
            Scope::Dynamics => !matches!(self, Mode::Modes | Mode::Couplings),
            Scope::Sweep => self == Mode::Sweep,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Modes => "modes",
            Mode::Couplings => "couplings",
            Mode::Negativity => "negativity",
            Mode::Lindblad => "lindblad",
            Mode::Sweep => "sweep",
            Mode::Validate => "validate",
        }
    }
}

impl FromStr for Mode {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Mode::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| CliError::Usage(format!("unknown mode '{s}'")))
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub t_start: f64,
    pub t_end: f64,
    pub points: usize,
}

impl Grid {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.t_end - self.t_start) / (self.points - 1) as f64;
        (0..self.points).map(move |i| self.t_start + step * i as f64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub axis: &'static str,
    pub values: Vec<Value>,
    pub task: Mode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub mode: Mode,
    pub params: Params,
    pub grid: Option<Grid>,
    pub sweep: Option<SweepAxis>,
    pub output_path: Option<PathBuf>,
}

impl RunSpec {
    /// Keys that do not apply to `mode` are dropped.
    pub fn new(mode: Mode, mut params: Params) -> Result<Self, CliError> {
        for p in PARAMS.iter().filter(|p| !mode.uses(p.scope)) {
            params.remove(p.key);
        }
        let grid = match mode {
            Mode::Negativity | Mode::Lindblad | Mode::Sweep | Mode::Validate => Some(grid(&params)?),
            Mode::Modes | Mode::Couplings => None,
        };
        let sweep = if mode == Mode::Sweep { Some(sweep_axis(&params)?) } else { None };
        let output_path = params.text("output").map(|o| params.output_dir().join(o));
        Ok(Self { mode, params, grid, sweep, output_path })
    }

    /// Header lines, each starting with `# `.
    pub fn header(&self) -> String {
        let mut s = format!("# {MAGIC} {VERSION}\n# mode = {}\n", self.mode);
        for line in self.params.lines() {
            s.push_str("# ");
            s.push_str(&line);
            s.push('\n');
        }
        s
    }

    /// Rebuilds a spec from the header of an output file. Lines starting
    /// with `##` are notes and are skipped; parsing stops at the first line
    /// that does not start with `#`.
    pub fn from_header(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines().take_while(|l| l.starts_with('#')).enumerate();
        let bad = |line: usize, msg: String| CliError::Config { path: "<header>".into(), line, msg };
        match lines.next() {
            Some((_, first)) if first.strip_prefix("# ").and_then(|r| r.strip_prefix(MAGIC)).is_some() => {}
            _ => return Err(bad(1, format!("missing '# {MAGIC} <version>' line"))),
        }
        let mut mode = None;
        let mut body = String::new();
        for (i, line) in lines {
            if line.starts_with("##") {
                body.push('\n');
                continue;
            }
            let content = line.trim_start_matches('#').trim();
            match content.split_once('=') {
                Some((k, v)) if k.trim() == "mode" => {
                    mode = Some(v.trim().parse::<Mode>().map_err(|e| bad(i + 1, e.to_string()))?);
                    body.push('\n');
                }
                _ => {
                    body.push_str(content);
                    body.push('\n');
                }
            }
        }
        let mode = mode.ok_or_else(|| bad(2, "missing mode line".into()))?;
        let mut raw = RawParams::default();
        // Line numbers in `body` are offset by the magic line.
        raw.apply_config(&format!("\n{body}"), "<header>")?;
        RunSpec::new(mode, raw.resolve()?)
    }
}

fn grid(params: &Params) -> Result<Grid, CliError> {
    let t_start = params.require("t_start")?;
    let t_end = params.require("t_end")?;
    let points = params.integer("points")? as usize;
    if points < 2 {
        return Err(CliError::Usage(format!("points = {points} must be at least 2")));
    }
    if t_end <= t_start {
        return Err(CliError::Usage(format!("t_end = {t_end} must exceed t_start = {t_start}")));
    }
    if t_start < 0.0 {
        return Err(CliError::Usage(format!("t_start = {t_start} must be >= 0")));
    }
    Ok(Grid { t_start, t_end, points })
}

fn sweep_axis(params: &Params) -> Result<SweepAxis, CliError> {
    let axis = params.text("axis").ok_or_else(|| CliError::Usage("sweep needs 'axis'".into()))?;
    let param = lookup(axis).ok_or_else(|| CliError::Usage(format!("unknown sweep axis '{axis}'")))?;
    if !matches!(param.kind, Kind::Quantity(_) | Kind::Integer) || matches!(axis, "points" | "seed") {
        return Err(CliError::Usage(format!("'{axis}' cannot be swept")));
    }
    let raw = params.list("values").ok_or_else(|| CliError::Usage("sweep needs 'values'".into()))?;
    let values = raw
        .iter()
        .map(|v| match param.kind {
            Kind::Quantity(d) => parse_quantity(v, d).map(Value::Number),
            _ => v.parse().map(Value::Integer).map_err(|_| format!("'{v}' is not an integer")),
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|m| CliError::Usage(format!("values: {m}")))?;
    let task: Mode = params.text("task").unwrap_or("lindblad").parse()?;
    if !matches!(task, Mode::Negativity | Mode::Lindblad) {
        return Err(CliError::Usage(format!("sweep task must be negativity or lindblad, got '{task}'")));
    }
    Ok(SweepAxis { axis: param.key, values, task })
}
