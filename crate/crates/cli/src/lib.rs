//! Command-line driver for `dualmode`: config parsing, single runs,
//! parameter sweeps and CSV / gnuplot output.

pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod params;
pub mod spec;
pub mod units;
