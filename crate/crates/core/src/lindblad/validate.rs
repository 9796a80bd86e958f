//! Element-wise comparison of the printed closed form against RK4.

use std::fmt;

use super::appendix::appendix_elements;
use super::{integrate_converged, Convergence, IntegrationConfig, LindbladSystem};
use crate::basis::DIM;
use crate::entanglement::DensityMatrix;
use crate::Result;

/// Elements deviating from RK4 by more than this are flagged.
pub const FLAG_TOL: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct ElementReport {
    /// 1-based `(k, l)`.
    pub k: usize,
    pub l: usize,
    /// Max `|closed form − RK4|` over the grid; `None` if a printed
    /// denominator vanishes for these parameters.
    pub max_error: Option<f64>,
}

impl ElementReport {
    pub fn flagged(&self) -> bool {
        self.max_error.is_some_and(|e| !(e <= FLAG_TOL))
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub times: Vec<f64>,
    pub elements: Vec<ElementReport>,
    pub convergence: Convergence,
}

impl ValidationReport {
    pub fn element(&self, k: usize, l: usize) -> &ElementReport {
        &self.elements[(k - 1) * DIM + (l - 1)]
    }

    pub fn flagged(&self) -> impl Iterator<Item = &ElementReport> {
        self.elements.iter().filter(|e| e.flagged())
    }

    pub fn unavailable(&self) -> impl Iterator<Item = &ElementReport> {
        self.elements.iter().filter(|e| e.max_error.is_none())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# element  max_abs_error  status")?;
        for e in &self.elements {
            let (err, status) = match e.max_error {
                None => ("-".to_string(), "unavailable"),
                Some(x) if e.flagged() => (format!("{x:.3e}"), "FLAGGED"),
                Some(x) => (format!("{x:.3e}"), "ok"),
            };
            writeln!(f, "rho_{}{}  {err:>13}  {status}", e.k, e.l)?;
        }
        write!(
            f,
            "# flagged {} of {}, unavailable {}, rk4 dt {:e}",
            self.flagged().count(),
            self.elements.len(),
            self.unavailable().count(),
            self.convergence.dt
        )
    }
}

/// Samples `samples` points on `[0, t_end]` and compares every element.
pub fn cross_validate(
    sys: &LindbladSystem,
    rho0: &DensityMatrix,
    t_end: f64,
    samples: usize,
) -> Result<ValidationReport> {
    let (traj, convergence) = integrate_converged(sys, rho0, &IntegrationConfig::new(t_end, samples))?;
    let mut worst: [[Option<f64>; DIM]; DIM] = [[Some(0.0); DIM]; DIM];
    for (t, state) in traj.times.iter().zip(&traj.states) {
        let closed = appendix_elements(rho0.matrix(), sys, *t);
        for k in 0..DIM {
            for l in 0..DIM {
                worst[k][l] = match (worst[k][l], closed[k][l]) {
                    (Some(w), Some(v)) => {
                        let d = (v - state.matrix()[(k, l)]).norm();
                        // NaN propagates as a failure rather than being dropped by max.
                        Some(if d.is_nan() || d > w { d } else { w })
                    }
                    _ => None,
                };
            }
        }
    }
    let elements = (0..DIM * DIM)
        .map(|i| ElementReport { k: i / DIM + 1, l: i % DIM + 1, max_error: worst[i / DIM][i % DIM] })
        .collect();
    Ok(ValidationReport { times: traj.times, elements, convergence })
}
