//! Two NV-center spins (three-level systems) coupled indirectly through a
//! dual-mode nanomechanical cantilever.
//!
//! The crate is organised bottom-up:
//!
//! * [`mechanics`]: spring constants, normal modes and zero-point amplitudes
//!   of the two-rod cantilever.
//! * [`dressing`]: dressed three-level eigensystem, spin–resonator couplings
//!   and the effective spin–spin couplings `alpha`, `beta`.
//! * [`basis`]: the two-qutrit product basis, `R_ij` operators and the
//!   effective interaction `V`.
//! * [`linalg`] and [`entanglement`]: Hermitian eigenvalues, partial transpose
//!   and negativity.
//! * [`unitary`]: closed-form amplitude evolution and negativity formulas.
//! * [`lindblad`]: master-equation integration, the analytic solution and
//!   their cross-validation.
//!
//! Everything is SI or dimensionless; unit conversion happens at the CLI.

// `!(x < tol)` is used deliberately so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod constants;
pub mod dressing;
pub mod entanglement;
mod error;
pub mod linalg;
pub mod lindblad;
pub mod mechanics;
pub mod states;
pub mod unitary;

pub use error::{Error, Result};

/// Complex double used throughout.
pub type C64 = num_complex::Complex64;
