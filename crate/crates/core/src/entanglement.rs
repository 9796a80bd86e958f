//! Two-qutrit density matrices, partial transpose and negativity.

use crate::basis::{index, DIM, QUTRIT};
use crate::linalg::{hermitian_eigenvalues, hermiticity_error, trace, CMat9};
use crate::{Error, Result, C64};

/// Hermiticity tolerance for a valid density matrix.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance for a valid density matrix.
pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted as "non-negative".
pub const POSITIVITY_TOL: f64 = 1e-9;
/// Partial-transpose eigenvalues below `-NEGATIVE_EIG_TOL` count as negative.
pub const NEGATIVE_EIG_TOL: f64 = 1e-12;

/// A validated 9×9 two-qutrit density matrix in the product basis of
/// [`crate::basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMat9);

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(m: CMat9) -> Result<Self> {
        let herm = hermiticity_error(&m);
        if !(herm < HERMITIAN_TOL) {
            return Err(Error::Domain(format!("density matrix not Hermitian: {herm:e}")));
        }
        let tr = trace(&m);
        if !((tr - C64::new(1.0, 0.0)).norm() < TRACE_TOL) {
            return Err(Error::Domain(format!("density matrix trace {tr} != 1")));
        }
        let min = hermitian_eigenvalues(&m)?[0];
        if min < -POSITIVITY_TOL {
            return Err(Error::Domain(format!("density matrix has eigenvalue {min:e} < 0")));
        }
        Ok(Self(m))
    }

    /// Wraps a matrix the caller already knows to be a density matrix up to
    /// integration error (e.g. a stored trajectory point).
    pub fn new_unchecked(m: CMat9) -> Self {
        Self(m)
    }

    /// `|ψ⟩⟨ψ|` for a normalized 9-vector.
    pub fn pure(amps: &[C64; DIM]) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !((norm - 1.0).abs() < 1e-12) {
            return Err(Error::Domain(format!("state norm {norm} != 1")));
        }
        Ok(Self(CMat9::from_fn(|i, j| amps[i] * amps[j].conj())))
    }

    /// Basis projector `|i,j⟩⟨i,j|` (levels 1-based).
    pub fn basis(i: usize, j: usize) -> Self {
        let mut m = CMat9::zeros();
        let k = index(i, j);
        m[(k, k)] = C64::new(1.0, 0.0);
        Self(m)
    }

    /// `ρA ⊗ ρB` for two single-qutrit density matrices.
    pub fn product(a: &nalgebra::Matrix3<C64>, b: &nalgebra::Matrix3<C64>) -> Result<Self> {
        Self::new(crate::basis::kron(a, b))
    }

    pub fn matrix(&self) -> &CMat9 {
        &self.0
    }

    pub fn into_matrix(self) -> CMat9 {
        self.0
    }

    /// Element `ρ_kl` with 1-based `k, l` in `1..=9`.
    pub fn element(&self, k: usize, l: usize) -> C64 {
        self.0[(k - 1, l - 1)]
    }

    pub fn trace(&self) -> C64 {
        trace(&self.0)
    }

    pub fn purity(&self) -> f64 {
        trace(&(self.0 * self.0)).re
    }

    pub fn eigenvalues(&self) -> Result<[f64; DIM]> {
        hermitian_eigenvalues(&self.0)
    }
}

/// Partial transpose over the first spin:
/// `⟨i,j|ρ^T1|k,l⟩ = ⟨k,j|ρ|i,l⟩`. Pure index permutation.
pub fn partial_transpose_spin1(rho: &CMat9) -> CMat9 {
    let mut out = CMat9::zeros();
    for i in 1..=QUTRIT {
        for j in 1..=QUTRIT {
            for k in 1..=QUTRIT {
                for l in 1..=QUTRIT {
                    out[(index(i, j), index(k, l))] = rho[(index(k, j), index(i, l))];
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct NegativityResult {
    /// `−Σ_{χ<0} χ` over the partial-transpose spectrum.
    pub value: f64,
    /// The eigenvalues that counted as negative, ascending.
    pub negative_eigenvalues: Vec<f64>,
}

pub fn negativity(rho: &DensityMatrix) -> Result<NegativityResult> {
    negativity_of(rho.matrix())
}

/// Negativity of any Hermitian 9×9 matrix (no density-matrix validation).
pub fn negativity_of(rho: &CMat9) -> Result<NegativityResult> {
    let spectrum = hermitian_eigenvalues(&partial_transpose_spin1(rho))?;
    let negative_eigenvalues: Vec<f64> = spectrum.iter().copied().filter(|&x| x < -NEGATIVE_EIG_TOL).collect();
    let value = -negative_eigenvalues.iter().sum::<f64>();
    Ok(NegativityResult { value, negative_eigenvalues })
}

/// `½ Σ|λ_i|` of `a − b`.
pub fn trace_distance(a: &CMat9, b: &CMat9) -> Result<f64> {
    let diff = a - b;
    Ok(0.5 * hermitian_eigenvalues(&diff)?.iter().map(|x| x.abs()).sum::<f64>())
}
