//! Parameter registry, typed values and the `key = value` config format.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use crate::error::CliError;
use crate::format::g17;
use crate::units::{parse_quantity, Dimension};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Quantity(Dimension),
    Integer,
    Bool,
    Text,
    /// Comma-separated list whose dimension is that of the sweep axis.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    Dynamics,
    Sweep,
}

pub struct Param {
    pub key: &'static str,
    pub kind: Kind,
    pub default: Option<&'static str>,
    pub scope: Scope,
    pub help: &'static str,
}

const fn p(key: &'static str, kind: Kind, default: Option<&'static str>, scope: Scope, help: &'static str) -> Param {
    Param { key, kind, default, scope, help }
}

use Dimension as D;
use Kind::{Bool, Integer, Quantity as Q, Text};

/// Every recognised key, in header order.
pub const PARAMS: &[Param] = &[
    p("length_1", Q(D::Length), Some("15um"), Scope::All, "length of rod 1"),
    p("length_2", Q(D::Length), Some("9um"), Scope::All, "length of rod 2"),
    p("width_1", Q(D::Length), Some("300nm"), Scope::All, "width of rod 1"),
    p("width_2", Q(D::Length), Some("200nm"), Scope::All, "width of rod 2"),
    p("thickness_1", Q(D::Length), Some("30nm"), Scope::All, "thickness of rod 1"),
    p("thickness_2", Q(D::Length), Some("20nm"), Scope::All, "thickness of rod 2"),
    p("mass_1", Q(D::Mass), Some("3.5e-16kg"), Scope::All, "mass of rod 1"),
    p("mass_2", Q(D::Mass), Some("1e-16kg"), Scope::All, "mass of rod 2"),
    p("quality_1", Q(D::Dimensionless), Some("1e5"), Scope::All, "quality factor of rod 1"),
    p("quality_2", Q(D::Dimensionless), Some("1e5"), Scope::All, "quality factor of rod 2"),
    p("young_modulus", Q(D::Pressure), Some("130GPa"), Scope::All, "Young's modulus"),
    p("density", Q(D::MassDensity), Some("2330kg/m3"), Scope::All, "mass density"),
    p("k_1", Q(D::Stiffness), None, Scope::All, "spring constant of rod 1 (overrides the beam formula)"),
    p("k_2", Q(D::Stiffness), None, Scope::All, "spring constant of rod 2 (overrides the beam formula)"),
    p("rabi_zero", Q(D::Frequency), None, Scope::All, "mean Rabi frequency"),
    p("delta_rabi", Q(D::Frequency), None, Scope::All, "Rabi asymmetry (or give b_field)"),
    p("b_field", Q(D::MagneticField), None, Scope::All, "external field setting the Rabi asymmetry"),
    p("detuning", Q(D::Frequency), None, Scope::All, "common drive detuning"),
    p("gradient", Q(D::FieldGradient), None, Scope::All, "tip field gradient"),
    p("g_factor", Q(D::Dimensionless), Some("2"), Scope::All, "electron g-factor"),
    p(
        "resonance_floor",
        Q(D::Dimensionless),
        Some("1e-6"),
        Scope::All,
        "minimum |detuning| as a fraction of the mode frequency",
    ),
    p("n_1", Integer, Some("0"), Scope::All, "occupation of mode 1"),
    p("n_3", Integer, Some("0"), Scope::All, "occupation of mode 2"),
    p("alpha", Q(D::Frequency), None, Scope::All, "coupling alpha (skips the physical chain)"),
    p("beta", Q(D::Frequency), None, Scope::All, "coupling beta (skips the physical chain)"),
    p("gamma_e", Q(D::Frequency), Some("0"), Scope::Dynamics, "decay rate |3> -> |1>"),
    p("gamma_d", Q(D::Frequency), Some("0"), Scope::Dynamics, "decay rate |2> -> |1>"),
    p("initial", Text, Some("bell26"), Scope::Dynamics, "initial state: name, basis:i,j, nine amplitudes, or random"),
    p("seed", Integer, Some("1"), Scope::Dynamics, "seed for initial = random"),
    p("t_start", Q(D::Time), Some("0"), Scope::Dynamics, "first output time"),
    p("t_end", Q(D::Time), Some("10"), Scope::Dynamics, "last output time"),
    p("points", Integer, Some("401"), Scope::Dynamics, "number of output times"),
    p("dt", Q(D::Time), None, Scope::Dynamics, "RK4 step (default 1e-3 / fastest rate)"),
    p("zeros", Bool, Some("true"), Scope::Dynamics, "add the exact negativity zeros to the time grid"),
    p("full_state", Bool, Some("false"), Scope::Dynamics, "append all 81 density-matrix elements"),
    p("axis", Text, None, Scope::Sweep, "parameter to sweep"),
    p("values", Kind::List, None, Scope::Sweep, "comma-separated sweep values"),
    p("task", Text, Some("lindblad"), Scope::Sweep, "per-point computation: negativity or lindblad"),
    p("output", Text, None, Scope::All, "output file (sweeps: file prefix)"),
    p("output_dir", Text, Some("."), Scope::All, "directory for output files"),
];

pub fn lookup(key: &str) -> Option<&'static Param> {
    PARAMS.iter().find(|p| p.key == key)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Integer(u64),
    Bool(bool),
    Text(String),
    List(Vec<String>),
}

impl Value {
    fn parse(param: &Param, raw: &str) -> Result<Value, String> {
        match param.kind {
            Kind::Quantity(d) => parse_quantity(raw, d).map(Value::Number),
            Kind::Integer => raw
                .trim()
                .parse()
                .map(Value::Integer)
                .map_err(|_| format!("'{}' is not a non-negative integer", raw.trim())),
            Kind::Bool => match raw.trim() {
                "true" | "yes" | "1" => Ok(Value::Bool(true)),
                "false" | "no" | "0" => Ok(Value::Bool(false)),
                other => Err(format!("'{other}' is not true or false")),
            },
            Kind::Text => {
                let t = raw.trim();
                if t.is_empty() {
                    Err("empty value".into())
                } else {
                    Ok(Value::Text(t.to_string()))
                }
            }
            Kind::List => {
                let items: Vec<String> = raw.split(',').map(|s| s.trim().to_string()).collect();
                if items.iter().any(String::is_empty) {
                    Err(format!("empty entry in list '{raw}'"))
                } else {
                    Ok(Value::List(items))
                }
            }
        }
    }

    /// Canonical text that parses back to the same value.
    pub fn render(&self, kind: Kind) -> String {
        match (self, kind) {
            (Value::Number(x), Kind::Quantity(d)) => match d.si_unit() {
                Some(u) => format!("{} {u}", g17(*x)),
                None => g17(*x),
            },
            (Value::Number(x), _) => g17(*x),
            (Value::Integer(n), _) => n.to_string(),
            (Value::Bool(b), _) => b.to_string(),
            (Value::Text(s), _) => s.clone(),
            (Value::List(v), _) => v.join(","),
        }
    }
}

/// Where a raw value came from, for error messages.
#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    Default,
    Config { path: String, line: usize },
    Flag,
    Environment,
}

impl Origin {
    fn error(&self, key: &str, msg: String) -> CliError {
        match self {
            Origin::Config { path, line } => {
                CliError::Config { path: path.clone(), line: *line, msg: format!("{key}: {msg}") }
            }
            Origin::Flag => CliError::Usage(format!("--{}: {msg}", key.replace('_', "-"))),
            Origin::Environment => CliError::Usage(format!("environment ({key}): {msg}")),
            Origin::Default => CliError::Usage(format!("default for {key}: {msg}")),
        }
    }
}

/// Raw `key → text` layers, later layers overriding earlier ones.
#[derive(Debug, Clone, Default)]
pub struct RawParams(BTreeMap<&'static str, (String, Origin)>);

impl RawParams {
    pub fn defaults() -> Self {
        let mut r = Self::default();
        for p in PARAMS {
            if let Some(d) = p.default {
                r.0.insert(p.key, (d.to_string(), Origin::Default));
            }
        }
        r
    }

    pub fn set(&mut self, key: &str, raw: &str, origin: Origin) -> Result<(), CliError> {
        let param = lookup(key).ok_or_else(|| origin.error(key, "unknown key".into()))?;
        self.0.insert(param.key, (raw.to_string(), origin));
        Ok(())
    }

    pub fn origin(&self, key: &str) -> Option<&Origin> {
        self.0.get(key).map(|(_, o)| o)
    }

    /// Parses a config file's text into this layer set.
    pub fn apply_config(&mut self, text: &str, path: &str) -> Result<(), CliError> {
        let mut seen = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |msg: String| CliError::Config { path: path.to_string(), line: line_no, msg };
            let content = line.split_once('#').map_or(line, |(c, _)| c).trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) =
                content.split_once('=').ok_or_else(|| err(format!("expected key = value, got '{content}'")))?;
            let key = key.trim();
            if lookup(key).is_none() {
                return Err(err(format!("unknown key '{key}'")));
            }
            if let Some(prev) = seen.insert(key.to_string(), line_no) {
                return Err(err(format!("duplicate key '{key}' (first set on line {prev})")));
            }
            self.set(key, value.trim(), Origin::Config { path: path.to_string(), line: line_no })?;
        }
        Ok(())
    }

    /// Parses every layer into typed values.
    pub fn resolve(&self) -> Result<Params, CliError> {
        let mut out = BTreeMap::new();
        for (key, (raw, origin)) in &self.0 {
            let param = lookup(key).expect("keys are validated on insert");
            let v = Value::parse(param, raw).map_err(|m| origin.error(key, m))?;
            out.insert(*key, v);
        }
        Ok(Params(out))
    }
}

/// Typed parameter values, keyed by registry name.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params(BTreeMap<&'static str, Value>);

impl Params {
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    pub fn number(&self, key: &str) -> Option<f64> {
        match self.0.get(key)? {
            Value::Number(x) => Some(*x),
            Value::Integer(n) => Some(*n as f64),
            _ => None,
        }
    }

    pub fn require(&self, key: &str) -> Result<f64, CliError> {
        self.number(key).ok_or_else(|| CliError::Usage(format!("missing required parameter '{key}'")))
    }

    pub fn integer(&self, key: &str) -> Result<u64, CliError> {
        match self.0.get(key) {
            Some(Value::Integer(n)) => Ok(*n),
            _ => Err(CliError::Usage(format!("missing required parameter '{key}'"))),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        matches!(self.0.get(key), Some(Value::Bool(true)))
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        match self.0.get(key)? {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }

    pub fn list(&self, key: &str) -> Option<&[String]> {
        match self.0.get(key)? {
            Value::List(v) => Some(v),
            _ => None,
        }
    }

    pub fn insert(&mut self, key: &'static str, value: Value) {
        self.0.insert(key, value);
    }

    pub fn remove(&mut self, key: &str) -> Option<Value> {
        self.0.remove(key)
    }

    pub fn output_dir(&self) -> PathBuf {
        PathBuf::from(self.text("output_dir").unwrap_or("."))
    }

    /// `key = value` lines in registry order.
    pub fn lines(&self) -> impl Iterator<Item = String> + '_ {
        PARAMS.iter().filter_map(|p| self.0.get(p.key).map(|v| format!("{} = {}", p.key, v.render(p.kind))))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
