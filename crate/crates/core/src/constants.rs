//! Physical constants (CODATA 2018).

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Bohr magneton, J/T.
pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;

/// Electron spin g-factor used for the NV center.
pub const G_FACTOR_NV: f64 = 2.0;
