use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the physical domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// A detuning is too close to zero for the second-order elimination of
    /// the resonator to be valid.
    #[error("resonance: |{name}| = {value:e} is below the floor {floor:e}")]
    Resonance { name: &'static str, value: f64, floor: f64 },

    /// A caller broke a numerical contract (e.g. passed a non-Hermitian
    /// matrix to the Hermitian eigensolver).
    #[error("contract violation: {0}")]
    Contract(String),

    /// The integrator produced a state that is not positive within tolerance.
    #[error("integration quality: minimum eigenvalue {min_eig:e} at t = {t}; reduce dt (currently {dt:e})")]
    IntegrationQuality { t: f64, min_eig: f64, dt: f64 },

    /// The analytic solution has a vanishing denominator at these parameters.
    #[error("degenerate analytic solution: {0}; use the numerical integrator")]
    Degenerate(String),
}
