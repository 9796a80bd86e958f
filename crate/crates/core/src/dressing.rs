//! Dressed three-level NV eigensystem and the effective spin–spin couplings.
//!
//! Bare spin basis ordering used for all 3×3 matrices here:
//! `(|−1⟩, |0⟩, |+1⟩)`. `Ω+` couples `|0⟩ ↔ |+1⟩`, `Ω−` couples `|0⟩ ↔ |−1⟩`,
//! and both `|±1⟩` carry the common detuning `−δ`.
//!
//! Dressed basis ordering: `(|g⟩, |d1⟩, |e⟩)`, relabelled `|1⟩, |2⟩, |3⟩`.

use nalgebra::{Matrix3, Vector3};
use std::f64::consts::SQRT_2;

use crate::mechanics::{NormalModes, TipField};
use crate::{Error, Result};

/// Default resonance floor: `|Δ_i|` must exceed this fraction of `Ω_i`.
pub const DEFAULT_RESONANCE_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    pub rabi_plus: f64,
    pub rabi_minus: f64,
    pub rabi_zero: f64,
    pub delta_rabi: f64,
    /// Common detuning `δ = δ+ = δ−`.
    pub detuning: f64,
    /// External field `B0`, T. Zero when `delta_rabi` was given directly.
    pub b_field: f64,
}

impl DriveParams {
    /// `Ω± = Ω0 ± ΔΩ`. All frequencies in rad/s.
    pub fn new(rabi_zero: f64, delta_rabi: f64, detuning: f64) -> Result<Self> {
        Self::build(rabi_zero, delta_rabi, detuning, 0.0)
    }

    /// `ΔΩ = μ_B B0 / ħ`.
    pub fn from_field(rabi_zero: f64, b_field: f64, detuning: f64) -> Result<Self> {
        let delta = crate::constants::BOHR_MAGNETON * b_field / crate::constants::HBAR;
        Self::build(rabi_zero, delta, detuning, b_field)
    }

    fn build(rabi_zero: f64, delta_rabi: f64, detuning: f64, b_field: f64) -> Result<Self> {
        if ![rabi_zero, delta_rabi, detuning, b_field].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("drive parameters must be finite".into()));
        }
        let rabi_plus = rabi_zero + delta_rabi;
        let rabi_minus = rabi_zero - delta_rabi;
        if rabi_plus <= 0.0 || rabi_minus <= 0.0 {
            return Err(Error::Domain(format!(
                "Rabi frequencies must be positive, got Ω+ = {rabi_plus}, Ω− = {rabi_minus}"
            )));
        }
        Ok(Self { rabi_plus, rabi_minus, rabi_zero, delta_rabi, detuning, b_field })
    }

    /// Bare three-level Hamiltonian (units of ħ) in `(|−1⟩, |0⟩, |+1⟩)`.
    pub fn bare_hamiltonian(&self) -> Matrix3<f64> {
        let d = -self.detuning;
        let p = 0.5 * self.rabi_plus;
        let m = 0.5 * self.rabi_minus;
        Matrix3::new(
            d, m, 0.0, //
            m, 0.0, p, //
            0.0, p, d,
        )
    }
}

/// Closed-form dressed eigensystem of the driven three-level spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedLevels {
    /// Mixing angle, in `(0, π/2)`.
    pub theta: f64,
    /// `Ω` with `2Ω² = Ω+² + Ω−²`.
    pub rms_rabi: f64,
    pub omega_g: f64,
    pub omega_d: f64,
    pub omega_e: f64,
}

/// Dressed levels plus the spin–resonator couplings `λg` (mode 1, `|1⟩↔|2⟩`)
/// and `λe` (mode 2, `|2⟩↔|3⟩`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedSpin {
    pub levels: DressedLevels,
    pub lambda_g: f64,
    pub lambda_e: f64,
}

/// Diagonalizes the driven spin in closed form.
///
/// `tan 2θ = −√2 Ω / δ` has two branches in `(−π/2, π/2)` for `θ`; the one
/// taken here, `2θ = atan2(√2 Ω, −δ)`, is the branch for which
/// `|e⟩ = cos θ |b1⟩ + sin θ |0⟩` is the eigenvector of `ω_e` (the upper
/// level). At `δ = 0` it gives `θ = π/4`.
pub fn dress(drive: &DriveParams) -> DressedLevels {
    let rms_rabi = (0.5 * (drive.rabi_plus.powi(2) + drive.rabi_minus.powi(2))).sqrt();
    let delta = drive.detuning;
    let root = (delta * delta + 2.0 * rms_rabi * rms_rabi).sqrt();
    let theta = 0.5 * (SQRT_2 * rms_rabi).atan2(-delta);
    // ω_{e,g} = (−δ ± root)/2. The root that would cancel is taken from
    // ω_e ω_g = −Ω²/2 instead.
    let half_sq = 0.5 * rms_rabi * rms_rabi;
    let (omega_g, omega_e) = if delta >= 0.0 {
        let g = -0.5 * (delta + root);
        (g, -half_sq / g)
    } else {
        let e = 0.5 * (root - delta);
        (-half_sq / e, e)
    };
    DressedLevels { theta, rms_rabi, omega_g, omega_d: -delta, omega_e }
}

impl DressedLevels {
    /// Dressed eigenvectors `|g⟩, |d1⟩, |e⟩` as the columns of a matrix, in
    /// the bare basis `(|−1⟩, |0⟩, |+1⟩)`.
    pub fn eigenvectors(&self, drive: &DriveParams) -> Matrix3<f64> {
        let norm = 1.0 / (self.rms_rabi * SQRT_2);
        let zero = Vector3::new(0.0, 1.0, 0.0);
        let bright = Vector3::new(drive.rabi_minus, 0.0, drive.rabi_plus) * norm;
        let dark = Vector3::new(drive.rabi_plus, 0.0, -drive.rabi_minus) * norm;
        let (s, c) = self.theta.sin_cos();
        let g = zero * c - bright * s;
        let e = bright * c + zero * s;
        Matrix3::from_columns(&[g, dark, e])
    }

    pub fn energies(&self) -> [f64; 3] {
        [self.omega_g, self.omega_d, self.omega_e]
    }
}

/// Exact `S_z` in the dressed basis `(|g⟩, |d1⟩, |e⟩)` by basis change.
pub fn sz_dressed(levels: &DressedLevels, drive: &DriveParams) -> Matrix3<f64> {
    let u = levels.eigenvectors(drive);
    let sz = Matrix3::from_diagonal(&Vector3::new(-1.0, 0.0, 1.0));
    u.transpose() * sz * u
}

/// The transition part of `S_z` in the dressed basis:
/// `−(Ω+Ω−/Ω²)(sin θ (|d1⟩⟨g| + h.c.) − cos θ (|d1⟩⟨e| + h.c.))`.
///
/// This is the piece that survives the rotating-wave approximation. It
/// equals [`sz_dressed`] up to the overall sign convention of `|d1⟩`, minus
/// the terms proportional to `Ω+² − Ω−²` (diagonal `d1`, `g`/`e` block),
/// which vanish when `Ω+ = Ω−`.
pub fn sz_transition_part(levels: &DressedLevels, drive: &DriveParams) -> Matrix3<f64> {
    let k = -drive.rabi_plus * drive.rabi_minus / levels.rms_rabi.powi(2);
    let (s, c) = levels.theta.sin_cos();
    let gd = k * s;
    let de = -k * c;
    Matrix3::new(
        0.0, gd, 0.0, //
        gd, 0.0, de, //
        0.0, de, 0.0,
    )
}

/// `λg = −λ1 Ω+Ω− sin θ / Ω²` for a given mixing angle.
pub fn lambda_g(lambda_1: f64, drive: &DriveParams, rms_rabi: f64, theta: f64) -> f64 {
    -lambda_1 * drive.rabi_plus * drive.rabi_minus * theta.sin() / rms_rabi.powi(2)
}

/// `λe = λ2 Ω+Ω− cos θ / Ω²` for a given mixing angle.
pub fn lambda_e(lambda_2: f64, drive: &DriveParams, rms_rabi: f64, theta: f64) -> f64 {
    lambda_2 * drive.rabi_plus * drive.rabi_minus * theta.cos() / rms_rabi.powi(2)
}

pub fn spin_resonator_couplings(drive: &DriveParams, tip: &TipField) -> DressedSpin {
    let levels = dress(drive);
    DressedSpin {
        levels,
        lambda_g: lambda_g(tip.lambda_1, drive, levels.rms_rabi, levels.theta),
        lambda_e: lambda_e(tip.lambda_2, drive, levels.rms_rabi, levels.theta),
    }
}

/// Where the couplings came from. The two paths are kept distinct so that
/// output metadata can say which one was used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CouplingSource {
    /// Derived from the dressed spin and the normal modes.
    Physical { delta_1: f64, delta_2: f64 },
    /// Supplied directly (e.g. to reproduce the figure regimes).
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCouplings {
    pub alpha: f64,
    pub beta: f64,
    pub n_1: u32,
    pub n_3: u32,
    pub source: CouplingSource,
}

impl EffectiveCouplings {
    pub fn direct(alpha: f64, beta: f64, n_1: u32, n_3: u32) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::Domain("alpha and beta must be finite".into()));
        }
        Ok(Self { alpha, beta, n_1, n_3, source: CouplingSource::Direct })
    }

    pub fn detunings(&self) -> Option<(f64, f64)> {
        match self.source {
            CouplingSource::Physical { delta_1, delta_2 } => Some((delta_1, delta_2)),
            CouplingSource::Direct => None,
        }
    }
}

/// `α = λg²/Δ1`, `β = λe²/Δ2`, with `Δ1 = Ω1 − ω_e` and `Δ2 = Ω2 + ω_g`.
pub fn effective_couplings(ds: &DressedSpin, nm: &NormalModes, n_1: u32, n_3: u32) -> Result<EffectiveCouplings> {
    effective_couplings_with_floor(ds, nm, n_1, n_3, DEFAULT_RESONANCE_FLOOR)
}

pub fn effective_couplings_with_floor(
    ds: &DressedSpin,
    nm: &NormalModes,
    n_1: u32,
    n_3: u32,
    floor: f64,
) -> Result<EffectiveCouplings> {
    let delta_1 = nm.big_omega_1 - ds.levels.omega_e;
    let delta_2 = nm.big_omega_2 + ds.levels.omega_g;
    let floor_1 = floor * nm.big_omega_1;
    let floor_2 = floor * nm.big_omega_2;
    if !(delta_1.abs() > floor_1) {
        return Err(Error::Resonance { name: "Δ1", value: delta_1, floor: floor_1 });
    }
    if !(delta_2.abs() > floor_2) {
        return Err(Error::Resonance { name: "Δ2", value: delta_2, floor: floor_2 });
    }
    Ok(EffectiveCouplings {
        alpha: ds.lambda_g * ds.lambda_g / delta_1,
        beta: ds.lambda_e * ds.lambda_e / delta_2,
        n_1,
        n_3,
        source: CouplingSource::Physical { delta_1, delta_2 },
    })
}

/// `(α − β)/(α + β)`; zero exactly when the entanglement stays at its
/// persistent value.
pub fn persistence_residual(alpha: f64, beta: f64) -> Result<f64> {
    let sum = alpha + beta;
    if sum == 0.0 || !sum.is_finite() {
        return Err(Error::Domain(format!("alpha + beta must be finite and nonzero, got {sum}")));
    }
    Ok((alpha - beta) / sum)
}

pub fn persistent_entanglement_condition(ds: &DressedSpin, nm: &NormalModes) -> Result<f64> {
    let c = effective_couplings(ds, nm, 0, 0)?;
    persistence_residual(c.alpha, c.beta)
}
