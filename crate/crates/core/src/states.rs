//! Named initial states and seeded random states.

use nalgebra::{Matrix3, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::basis::{index, DIM};
use crate::entanglement::DensityMatrix;
use crate::linalg::CMat9;
use crate::{Error, Result, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random normalized 9-vector.
pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R) -> [C64; DIM] {
    let mut v: [C64; DIM] = std::array::from_fn(|_| gaussian(rng));
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= norm;
    }
    v
}

/// Full-rank random state `G G† / tr(G G†)` from a complex Ginibre matrix.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let g = CMat9::from_fn(|_, _| gaussian(rng));
    let m = g * g.adjoint();
    let tr: f64 = (0..DIM).map(|i| m[(i, i)].re).sum();
    let mut m = m / C64::new(tr, 0.0);
    // Exact Hermiticity; the product above is only Hermitian to rounding.
    m = crate::linalg::hermitian_part(&m);
    DensityMatrix::new_unchecked(m)
}

/// Haar-random 3×3 unitary (QR of a Ginibre matrix with the R-diagonal
/// phases removed).
pub fn random_unitary3<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<C64> {
    let g = Matrix3::from_fn(|_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for k in 0..3 {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        let col = q.column(k) * phase;
        q.set_column(k, &col);
    }
    q
}

/// Random single-qutrit pure state.
pub fn random_qutrit<R: Rng + ?Sized>(rng: &mut R) -> Vector3<C64> {
    let v = Vector3::from_fn(|_, _| gaussian(rng));
    v / C64::new(v.norm(), 0.0)
}

/// Random single-qutrit mixed state.
pub fn random_qutrit_density<R: Rng + ?Sized>(rng: &mut R) -> Matrix3<C64> {
    let g = Matrix3::from_fn(|_, _| gaussian(rng));
    let m = g * g.adjoint();
    let tr = m.trace();
    crate::linalg::hermitian_part(&(m / tr))
}

/// Random product state `ρA ⊗ ρB` with mixed factors.
pub fn random_product_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let a = random_qutrit_density(rng);
    let b = random_qutrit_density(rng);
    DensityMatrix::new_unchecked(crate::basis::kron(&a, &b))
}

/// Product of two pure qutrit states as a 9-vector.
pub fn product_amplitudes(a: &Vector3<C64>, b: &Vector3<C64>) -> [C64; DIM] {
    std::array::from_fn(|k| a[k / 3] * b[k % 3])
}

/// Named initial amplitude vectors for the unitary and open dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedState {
    /// `(|1,2⟩ + |2,3⟩)/√2`, i.e. `a2 = a6 = 1/√2`.
    Bell26,
    /// `(|2,1⟩ + |3,2⟩)/√2`, i.e. `a4 = a8 = 1/√2`.
    Bell48,
    /// `(|1,2⟩ + |2,1⟩)/√2`.
    Symmetric24,
    /// All nine amplitudes `1/3`.
    Equal,
    /// `(|1,1⟩ + |2,2⟩ + |3,3⟩)/√3`.
    MaxEntangled,
}

impl NamedState {
    pub const ALL: [NamedState; 5] =
        [NamedState::Bell26, NamedState::Bell48, NamedState::Symmetric24, NamedState::Equal, NamedState::MaxEntangled];

    pub fn name(self) -> &'static str {
        match self {
            NamedState::Bell26 => "bell26",
            NamedState::Bell48 => "bell48",
            NamedState::Symmetric24 => "sym24",
            NamedState::Equal => "equal",
            NamedState::MaxEntangled => "maxent",
        }
    }

    pub fn amplitudes(self) -> [C64; DIM] {
        let mut a = [C64::new(0.0, 0.0); DIM];
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match self {
            NamedState::Bell26 => {
                a[1] = h;
                a[5] = h;
            }
            NamedState::Bell48 => {
                a[3] = h;
                a[7] = h;
            }
            NamedState::Symmetric24 => {
                a[1] = h;
                a[3] = h;
            }
            NamedState::Equal => a = [C64::new(1.0 / 3.0, 0.0); DIM],
            NamedState::MaxEntangled => {
                let s = C64::new(1.0 / 3f64.sqrt(), 0.0);
                for i in 1..=3 {
                    a[index(i, i)] = s;
                }
            }
        }
        a
    }
}

impl std::str::FromStr for NamedState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedState::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown initial state '{s}'")))
    }
}

/// Initial state given either by name, by a basis label `basis:i,j`, or by
/// nine explicit complex amplitudes.
pub fn parse_initial_state(spec: &str) -> Result<[C64; DIM]> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("basis:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let lv = |p: &str| -> Result<usize> {
            match p.parse::<usize>() {
                Ok(v @ 1..=3) => Ok(v),
                _ => Err(Error::Domain(format!("basis level '{p}' not in 1..=3"))),
            }
        };
        if parts.len() != 2 {
            return Err(Error::Domain(format!("expected basis:i,j, got '{s}'")));
        }
        let mut a = [C64::new(0.0, 0.0); DIM];
        a[index(lv(parts[0])?, lv(parts[1])?)] = C64::new(1.0, 0.0);
        return Ok(a);
    }
    if s.contains(',') {
        let vals: Vec<&str> = s.split(',').map(str::trim).collect();
        if vals.len() != DIM {
            return Err(Error::Domain(format!("expected {DIM} amplitudes, got {}", vals.len())));
        }
        let mut a = [C64::new(0.0, 0.0); DIM];
        for (slot, v) in a.iter_mut().zip(vals) {
            *slot = v.parse::<C64>().map_err(|_| Error::Domain(format!("bad amplitude '{v}'")))?;
        }
        let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::Domain("zero state vector".into()));
        }
        for z in a.iter_mut() {
            *z /= norm;
        }
        return Ok(a);
    }
    Ok(s.parse::<NamedState>()?.amplitudes())
}
