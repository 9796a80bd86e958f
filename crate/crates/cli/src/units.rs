//! Unit suffixes accepted on the command line and in config files.
//!
//! Frequencies are angular rates: `1kHz` means `1e3 s⁻¹` with no factor of
//! 2π, so that `α·t` with `α = 1kHz` and `t = 1ms` is exactly 1.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Dimensionless,
    Frequency,
    Time,
    Length,
    Mass,
    Stiffness,
    Pressure,
    MassDensity,
    MagneticField,
    FieldGradient,
}

impl Dimension {
    const ALL: [Dimension; 10] = [
        Dimension::Dimensionless,
        Dimension::Frequency,
        Dimension::Time,
        Dimension::Length,
        Dimension::Mass,
        Dimension::Stiffness,
        Dimension::Pressure,
        Dimension::MassDensity,
        Dimension::MagneticField,
        Dimension::FieldGradient,
    ];

    /// Accepted suffixes and their power-of-ten factors to SI. The first
    /// entry is the SI unit written into output headers.
    pub fn units(self) -> &'static [(&'static str, i32)] {
        match self {
            Dimension::Dimensionless => &[],
            Dimension::Frequency => &[("1/s", 0), ("Hz", 0), ("kHz", 3), ("MHz", 6), ("GHz", 9), ("rad/s", 0)],
            Dimension::Time => &[("s", 0), ("ms", -3), ("us", -6), ("µs", -6), ("ns", -9), ("ps", -12)],
            Dimension::Length => &[("m", 0), ("mm", -3), ("um", -6), ("µm", -6), ("nm", -9)],
            Dimension::Mass => &[("kg", 0), ("g", -3)],
            Dimension::Stiffness => &[("N/m", 0), ("kg/s2", 0)],
            Dimension::Pressure => &[("Pa", 0), ("kPa", 3), ("MPa", 6), ("GPa", 9)],
            Dimension::MassDensity => &[("kg/m3", 0), ("g/cm3", 3)],
            Dimension::MagneticField => &[("T", 0), ("mT", -3), ("uT", -6), ("G", -4)],
            Dimension::FieldGradient => &[("T/m", 0), ("T/um", 6)],
        }
    }

    pub fn si_unit(self) -> Option<&'static str> {
        self.units().first().map(|u| u.0)
    }

    fn of_suffix(suffix: &str) -> Option<Dimension> {
        Dimension::ALL.into_iter().find(|d| d.units().iter().any(|u| u.0 == suffix))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Dimension::Dimensionless => "dimensionless",
            Dimension::Frequency => "frequency",
            Dimension::Time => "time",
            Dimension::Length => "length",
            Dimension::Mass => "mass",
            Dimension::Stiffness => "stiffness",
            Dimension::Pressure => "pressure",
            Dimension::MassDensity => "mass density",
            Dimension::MagneticField => "magnetic field",
            Dimension::FieldGradient => "field gradient",
        };
        f.write_str(name)
    }
}

/// Parses `<number>[ ]<suffix>` into SI. A bare number is taken as SI.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let s = text.trim();
    let split = s
        .char_indices()
        .find(|&(i, c)| {
            // Stop at the first char that cannot continue a float literal;
            // 'e'/'E' only count when followed by a digit or sign.
            !(c.is_ascii_digit() || matches!(c, '.' | '+' | '-'))
                && !(matches!(c, 'e' | 'E')
                    && i > 0
                    && s[i + 1..].starts_with(|n: char| n.is_ascii_digit() || n == '-' || n == '+'))
        })
        .map_or(s.len(), |(i, _)| i);
    let (num, suffix) = (s[..split].trim(), s[split..].trim());
    let value: f64 = num.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if !value.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    if suffix.is_empty() {
        return Ok(value);
    }
    if let Some(&(_, exp)) = dim.units().iter().find(|u| u.0 == suffix) {
        // Divide for negative exponents so that e.g. 15um is the double nearest 1.5e-5.
        let scale = 10f64.powi(exp.abs());
        return Ok(if exp < 0 { value / scale } else { value * scale });
    }
    Err(match Dimension::of_suffix(suffix) {
        Some(other) => format!("unit '{suffix}' is a {other}, expected a {dim}"),
        None if dim == Dimension::Dimensionless => format!("'{s}' must be a plain number"),
        None => {
            let known: Vec<&str> = dim.units().iter().map(|u| u.0).collect();
            format!("unknown unit '{suffix}' for a {dim} (accepted: {})", known.join(", "))
        }
    })
}
