//! The two-qutrit product basis and operators built on it.
//!
//! Every 9-dimensional vector and 9×9 matrix in this crate uses the same
//! first-spin-major ordering:
//!
//! ```text
//! index  0     1     2     3     4     5     6     7     8
//! state |1,1⟩ |1,2⟩ |1,3⟩ |2,1⟩ |2,2⟩ |2,3⟩ |3,1⟩ |3,2⟩ |3,3⟩
//! ```
//!
//! so `|i⟩⊗|j⟩` (levels 1-based) sits at `3(i−1) + (j−1)`, and amplitude
//! `a_k` / matrix element `ρ_kl` with 1-based `k, l` sit at `k−1`, `l−1`.
//! Levels are the dressed states `|1⟩ = |g⟩`, `|2⟩ = |d1⟩`, `|3⟩ = |e⟩`.

use nalgebra::Matrix3;

use crate::linalg::CMat9;
use crate::C64;

/// Single-spin dimension.
pub const QUTRIT: usize = 3;
/// Two-spin dimension.
pub const DIM: usize = 9;

/// Flat index of `|i⟩⊗|j⟩` for 1-based levels `i, j`.
#[inline]
pub const fn index(i: usize, j: usize) -> usize {
    QUTRIT * (i - 1) + (j - 1)
}

/// Inverse of [`index`]: 1-based levels of the flat index.
#[inline]
pub const fn levels(k: usize) -> (usize, usize) {
    (k / QUTRIT + 1, k % QUTRIT + 1)
}

/// Single-qutrit `R_ij = |i⟩⟨j|` (1-based).
pub fn r(i: usize, j: usize) -> Matrix3<C64> {
    let mut m = Matrix3::zeros();
    m[(i - 1, j - 1)] = C64::new(1.0, 0.0);
    m
}

/// Kronecker product of two 3×3 matrices, first factor major.
pub fn kron(a: &Matrix3<C64>, b: &Matrix3<C64>) -> CMat9 {
    CMat9::from_fn(|row, col| a[(row / QUTRIT, col / QUTRIT)] * b[(row % QUTRIT, col % QUTRIT)])
}

/// `R_ij^1 = R_ij ⊗ I₃`.
pub fn r_first(i: usize, j: usize) -> CMat9 {
    kron(&r(i, j), &Matrix3::identity())
}

/// `R_ij^2 = I₃ ⊗ R_ij`.
pub fn r_second(i: usize, j: usize) -> CMat9 {
    kron(&Matrix3::identity(), &r(i, j))
}

/// Effective exchange interaction
/// `V = −α(R¹₁₂R²₂₁ + R¹₂₁R²₁₂) − β(R¹₂₃R²₃₂ + R¹₃₂R²₂₃)`.
///
/// It swaps `|1,2⟩ ↔ |2,1⟩` with amplitude `−α` and `|2,3⟩ ↔ |3,2⟩` with
/// amplitude `−β`, and is Hermitian for real `α, β`.
pub fn exchange_interaction(alpha: f64, beta: f64) -> CMat9 {
    let a = C64::new(-alpha, 0.0);
    let b = C64::new(-beta, 0.0);
    (r_first(1, 2) * r_second(2, 1) + r_first(2, 1) * r_second(1, 2)) * a
        + (r_first(2, 3) * r_second(3, 2) + r_first(3, 2) * r_second(2, 3)) * b
}

/// Diagonal of the resonator-occupation part of the effective Hamiltonian,
/// `α(n1(R¹₁₁+R²₁₁) − (n1+1)(R¹₂₂+R²₂₂)) + β(n3(R¹₂₂+R²₂₂) − (n3+1)(R¹₃₃+R²₃₃))`.
///
/// It is a sum of single-spin terms and commutes with
/// [`exchange_interaction`].
pub fn occupation_diagonal(alpha: f64, beta: f64, n_1: u32, n_3: u32) -> [f64; DIM] {
    let n1 = f64::from(n_1);
    let n3 = f64::from(n_3);
    let single = [alpha * n1, -alpha * (n1 + 1.0) + beta * n3, -beta * (n3 + 1.0)];
    let mut out = [0.0; DIM];
    for (k, slot) in out.iter_mut().enumerate() {
        let (i, j) = levels(k);
        *slot = single[i - 1] + single[j - 1];
    }
    out
}

/// Full effective Hamiltonian `H0 + V`.
pub fn effective_hamiltonian(alpha: f64, beta: f64, n_1: u32, n_3: u32) -> CMat9 {
    let mut h = exchange_interaction(alpha, beta);
    for (k, d) in occupation_diagonal(alpha, beta, n_1, n_3).iter().enumerate() {
        h[(k, k)] += C64::new(*d, 0.0);
    }
    h
}
