//! Closed-form two-spin evolution under the effective exchange Hamiltonian
//! and the analytic negativity results built on it.
//!
//! Time is dimensionless in the sense that only the products `αt` and `βt`
//! matter; the CLI feeds couplings in kHz and times in ms.

use std::f64::consts::PI;

use crate::basis::{effective_hamiltonian, occupation_diagonal, DIM};
use crate::entanglement::DensityMatrix;
use crate::linalg::CMat9;
use crate::{Error, Result, C64};

/// Norm tolerance enforced on construction.
pub const NORM_TOL: f64 = 1e-12;
/// Relative tolerance for recognising `α/β` as a rational number.
pub const RATIO_TOL: f64 = 1e-9;
/// Largest denominator tried by the continued-fraction search.
pub const RATIO_MAX_DENOMINATOR: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSpinState {
    amps: [C64; DIM],
}

impl TwoSpinState {
    pub fn new(amps: [C64; DIM]) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !((norm - 1.0).abs() < NORM_TOL) {
            return Err(Error::Domain(format!("state norm² {norm} differs from 1")));
        }
        Ok(Self { amps })
    }

    pub fn amplitudes(&self) -> &[C64; DIM] {
        &self.amps
    }

    /// `a_k`, 1-based.
    pub fn a(&self, k: usize) -> C64 {
        self.amps[k - 1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionParams {
    pub alpha: f64,
    pub beta: f64,
    pub n1: u32,
    pub n3: u32,
}

impl EvolutionParams {
    pub fn new(alpha: f64, beta: f64, n1: u32, n3: u32) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::Domain(format!("non-finite coupling α={alpha}, β={beta}")));
        }
        Ok(Self { alpha, beta, n1, n3 })
    }

    /// `H0 + V` as a 9×9 matrix.
    pub fn hamiltonian(&self) -> CMat9 {
        effective_hamiltonian(self.alpha, self.beta, self.n1, self.n3)
    }
}

fn phase(x: f64) -> C64 {
    C64::from_polar(1.0, x)
}

/// Amplitudes at time `t`.
///
/// The exchange pairs `(a2, a4)` and `(a6, a8)` evolve through their
/// symmetric and antisymmetric combinations; every other amplitude only
/// picks up the phase of its diagonal energy.
pub fn evolve(state0: &TwoSpinState, p: &EvolutionParams, t: f64) -> TwoSpinState {
    let a = &state0.amps;
    let (al, be) = (p.alpha, p.beta);
    let n1 = f64::from(p.n1);
    let n3 = f64::from(p.n3);
    let half = C64::new(0.5, 0.0);

    let c1 = a[0];
    let c2 = (a[1] - a[3]) * half;
    let c4 = (a[1] + a[3]) * half;
    let c3 = a[2];
    let c5 = a[4];
    let c6 = (a[5] - a[7]) * half;
    let c8 = (a[5] + a[7]) * half;
    let c7 = a[6];
    let c9 = a[8];

    let e2 = phase(-be * n3 * t);
    let e4 = phase((2.0 * al - be * n3) * t);
    let e6 = phase(al * (n1 + 1.0) * t);
    let e8 = phase((2.0 * be + al * (n1 + 1.0)) * t);
    let e37 = phase(-(al * n1 - be * (n3 + 1.0)) * t);

    let amps = [
        c1 * phase(-2.0 * al * n1 * t),
        c2 * e2 + c4 * e4,
        c3 * e37,
        -c2 * e2 + c4 * e4,
        c5 * phase(2.0 * (al * (n1 + 1.0) - be * n3) * t),
        c6 * e6 + c8 * e8,
        c7 * e37,
        -c6 * e6 + c8 * e8,
        c9 * phase(2.0 * be * (n3 + 1.0) * t),
    ];
    TwoSpinState { amps }
}

/// `ρ_nm = a_n a_m*`.
pub fn density(state: &TwoSpinState) -> DensityMatrix {
    let a = &state.amps;
    DensityMatrix::new_unchecked(CMat9::from_fn(|i, j| a[i] * a[j].conj()))
}

/// Removes the occupation part `H0` from a full-Hamiltonian state:
/// `ρ_V = e^{iH0t} ρ e^{−iH0t}`. `H0` is diagonal and commutes with the
/// exchange term, so the result is the state evolved by the exchange term
/// alone.
pub fn strip_occupation_phases(rho: &CMat9, p: &EvolutionParams, t: f64) -> CMat9 {
    let d = occupation_diagonal(p.alpha, p.beta, p.n1, p.n3);
    CMat9::from_fn(|i, j| rho[(i, j)] * phase((d[i] - d[j]) * t))
}

/// Closed-form negativity for the initial state `a2 = a6 = 1/√2`
/// (equivalently `a4 = a8 = 1/√2`).
pub fn negativity_closed_form(alpha: f64, beta: f64, t: f64) -> f64 {
    let s = 6.0 - (4.0 * alpha * t).cos() - (4.0 * beta * t).cos()
        + 2.0 * (2.0 * (alpha - beta) * t).cos()
        + 2.0 * (2.0 * (alpha + beta) * t).cos();
    s.max(0.0).sqrt() / (4.0 * 2f64.sqrt())
}

/// Published negativity law for the all-`1/3` initial state at `α = β`:
/// `(4/9)(|sin αt| − sin αt)`.
///
/// This is not what the dynamics produce; see
/// [`equal_superposition_negativity_exact`].
pub fn equal_superposition_negativity(alpha: f64, t: f64) -> f64 {
    let s = (alpha * t).sin();
    4.0 / 9.0 * (s.abs() - s)
}

/// Negativity of the evolved all-`1/3` state at `α = β`: `(4/9)|sin αt|`.
///
/// `H` is real and the initial state is real, so `ψ(−t) = ψ(t)*` and the
/// negativity is even in `t`. Only the symmetric combinations of `(a2, a4)`
/// and `(a6, a8)` are populated; each picks up the phase `e^{iαt}`.
pub fn equal_superposition_negativity_exact(alpha: f64, t: f64) -> f64 {
    4.0 / 9.0 * (alpha * t).sin().abs()
}

/// Best rational approximation `p/q` (lowest terms, `q ≤ max_den`) of a
/// positive `x`, accepted only when within relative tolerance `tol`.
pub fn rational_approximation(x: f64, tol: f64, max_den: u64) -> Option<(u64, u64)> {
    if !(x.is_finite() && x > 0.0) {
        return None;
    }
    // Convergents h_k/k_k of the continued fraction of x.
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a > u64::MAX as f64 / 2.0 {
            return None;
        }
        let a = a as u64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        if ((h2 as f64 / k2 as f64) - x).abs() <= tol * x {
            return Some((h2, k2));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    None
}

/// Integers `(n, m)` with `α/β = (n+m+1)/(n−m)` and the zero schedule they
/// imply for [`negativity_closed_form`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroWitness {
    /// `α/β = p/q` in lowest terms.
    pub p: u64,
    pub q: u64,
    pub n: i64,
    pub m: i64,
    /// First zero, `pπ/(2α)`.
    pub first_zero: f64,
    /// Spacing between zeros, `pπ/α`.
    pub spacing: f64,
}

impl ZeroWitness {
    /// Zero times in `[0, t_max]`.
    pub fn zero_times(&self, t_max: f64) -> Vec<f64> {
        (0..).map(|k| self.first_zero + k as f64 * self.spacing).take_while(|&t| t <= t_max).collect()
    }
}

/// Returns a witness when `α/β = p/q` with `p`, `q` of opposite parity.
///
/// The negativity vanishes iff `cos4αt = cos4βt = 1` and
/// `cos2(α±β)t = −1`, i.e. `αt = πx/2`, `βt = πy/2` with `x − y` odd. This
/// needs `α/β = x/y` with `x − y` odd, so the condition is also necessary.
pub fn zero_negativity_ratio_check(alpha: f64, beta: f64) -> Option<ZeroWitness> {
    if !(alpha > 0.0 && beta > 0.0) {
        return None;
    }
    let (p, q) = rational_approximation(alpha / beta, RATIO_TOL, RATIO_MAX_DENOMINATOR)?;
    if (p + q) % 2 == 0 {
        return None;
    }
    let (pi, qi) = (p as i64, q as i64);
    let n = (pi + qi - 1) / 2;
    let m = (pi - qi - 1) / 2;
    debug_assert_eq!(n + m + 1, pi);
    debug_assert_eq!(n - m, qi);
    Some(ZeroWitness { p, q, n, m, first_zero: p as f64 * PI / (2.0 * alpha), spacing: p as f64 * PI / alpha })
}

/// Period in `t` of [`negativity_closed_form`] when `α/β` is rational.
pub fn negativity_period(alpha: f64, beta: f64) -> Option<f64> {
    if !(alpha > 0.0 && beta > 0.0) {
        return None;
    }
    let (p, q) = rational_approximation(alpha / beta, RATIO_TOL, RATIO_MAX_DENOMINATOR)?;
    // αT = πu/2, βT = πv/2 with u ± v even.
    let s = if (p + q) % 2 == 0 { 1.0 } else { 2.0 };
    Some(s * p as f64 * PI / (2.0 * alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::negativity;
    use crate::states::{random_pure_state, NamedState};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const I: C64 = C64::new(0.0, 1.0);

    /// Right-hand side `−i H a` written out amplitude by amplitude from the
    /// coupled equations, independent of the basis-module operators.
    fn rhs(a: &[C64; 9], al: f64, be: f64, n1: f64, n3: f64) -> [C64; 9] {
        let h = [
            2.0 * al * n1 * a[0],
            (-al + be * n3) * a[1] - al * a[3],
            (al * n1 - be * (n3 + 1.0)) * a[2],
            (-al + be * n3) * a[3] - al * a[1],
            (-2.0 * al * (n1 + 1.0) + 2.0 * be * n3) * a[4],
            (-al * (n1 + 1.0) - be) * a[5] - be * a[7],
            (al * n1 - be * (n3 + 1.0)) * a[6],
            (-al * (n1 + 1.0) - be) * a[7] - be * a[5],
            -2.0 * be * (n3 + 1.0) * a[8],
        ];
        h.map(|x| -I * x)
    }

    fn rk4(a0: [C64; 9], p: &EvolutionParams, t: f64) -> [C64; 9] {
        let (al, be) = (p.alpha, p.beta);
        let (n1, n3) = (f64::from(p.n1), f64::from(p.n3));
        let h_max = 1e-4 / al.abs().max(be.abs()).max(1e-300);
        let steps = (t / h_max).ceil().max(1.0) as usize;
        let h = t / steps as f64;
        let add = |x: &[C64; 9], k: &[C64; 9], s: f64| -> [C64; 9] { std::array::from_fn(|i| x[i] + k[i] * s) };
        let mut a = a0;
        for _ in 0..steps {
            let k1 = rhs(&a, al, be, n1, n3);
            let k2 = rhs(&add(&a, &k1, h / 2.0), al, be, n1, n3);
            let k3 = rhs(&add(&a, &k2, h / 2.0), al, be, n1, n3);
            let k4 = rhs(&add(&a, &k3, h), al, be, n1, n3);
            a = std::array::from_fn(|i| a[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0));
        }
        a
    }

    fn named(n: NamedState) -> TwoSpinState {
        TwoSpinState::new(n.amplitudes()).unwrap()
    }

    #[test]
    fn identity_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = TwoSpinState::new(random_pure_state(&mut rng)).unwrap();
        let p = EvolutionParams::new(1.3, 0.4, 2, 1).unwrap();
        let out = evolve(&s, &p, 0.0);
        for k in 1..=DIM {
            assert!((out.a(k) - s.a(k)).norm() < 1e-15);
        }
    }

    #[test]
    fn matches_rk4_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (al, be, n1, n3, t) in [(1.0, 2.0, 0, 0, 1.7), (0.7, 1.9, 2, 1, 2.5), (3.0, 0.5, 1, 3, 1.1)] {
            let s = TwoSpinState::new(random_pure_state(&mut rng)).unwrap();
            let p = EvolutionParams::new(al, be, n1, n3).unwrap();
            let closed = evolve(&s, &p, t);
            let num = rk4(*s.amplitudes(), &p, t);
            for (k, (c, n)) in closed.amps.iter().zip(&num).enumerate() {
                let d = (c - n).norm();
                assert!(d < 1e-8, "a{} off by {d:e} at {:?}", k + 1, (al, be, n1, n3));
            }
        }
    }

    #[test]
    fn zero_times_match_paper_schedule() {
        let w = zero_negativity_ratio_check(1.0, 2.0).unwrap();
        assert_eq!((w.p, w.q, w.n, w.m), (1, 2, 1, -1));
        let z = w.zero_times(10.0);
        for (k, t) in z.iter().enumerate() {
            assert!((t - (PI / 2.0 + PI * k as f64)).abs() < 1e-12);
            assert!(negativity_closed_form(1.0, 2.0, *t) < 1e-7);
        }
        let w = zero_negativity_ratio_check(1.0, 4.0).unwrap();
        assert!((w.first_zero - PI / 2.0).abs() < 1e-15);
        assert_eq!(w.n - w.m, 4);
        assert_eq!(w.n + w.m + 1, 1);
        assert!(zero_negativity_ratio_check(1.0, 3.0).is_none());
        assert!(zero_negativity_ratio_check(2.0, 2.0).is_none());
        assert!(zero_negativity_ratio_check(1.0, 2f64.sqrt()).is_none());
        let w = zero_negativity_ratio_check(3.0, 2.0).unwrap();
        assert!(negativity_closed_form(3.0, 2.0, w.first_zero) < 1e-7);
    }

    #[test]
    fn closed_form_negativity_at_reference_points() {
        for t in [0.0, 0.3, 1.0, 7.7] {
            assert!((negativity_closed_form(1.3, 1.3, t) - 0.5).abs() < 1e-14);
        }
        assert!(negativity_closed_form(1.0, 2.0, PI / 2.0) < 1e-7);
    }

    #[test]
    fn single_negative_eigenvalue_for_bell26() {
        let p = EvolutionParams::new(1.0, 3.0, 0, 0).unwrap();
        let s = named(NamedState::Bell26);
        for t in [0.2, 0.9, 2.1] {
            let rho = density(&evolve(&s, &p, t));
            let n = negativity(&rho).unwrap();
            assert_eq!(n.negative_eigenvalues.len(), 1);
            let m = rho.matrix();
            let chi = -(m[(1, 3)] * m[(3, 1)] + m[(1, 5)] * m[(5, 1)] + m[(3, 7)] * m[(7, 3)] + m[(5, 7)] * m[(7, 5)])
                .re
                .sqrt();
            assert!((n.negative_eigenvalues[0] - chi).abs() < 1e-12);
        }
    }

    #[test]
    fn pipeline_matches_closed_form_on_grid() {
        for al in 1..=4 {
            for be in 1..=4 {
                let p = EvolutionParams::new(al as f64, be as f64, 0, 0).unwrap();
                for init in [NamedState::Bell26, NamedState::Bell48] {
                    let s = named(init);
                    for i in 0..200 {
                        let t = 2.0 * PI * i as f64 / 199.0;
                        let n = negativity(&density(&evolve(&s, &p, t))).unwrap().value;
                        let c = negativity_closed_form(p.alpha, p.beta, t);
                        assert!((n - c).abs() < 1e-9, "{al} {be} t={t}: {n} vs {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn negativity_independent_of_occupations() {
        let s = named(NamedState::Bell26);
        for t in [0.4, 1.3, 2.9] {
            let base =
                negativity(&density(&evolve(&s, &EvolutionParams::new(1.0, 2.5, 0, 0).unwrap(), t))).unwrap().value;
            for n1 in 0..3 {
                for n3 in 0..3 {
                    let p = EvolutionParams::new(1.0, 2.5, n1, n3).unwrap();
                    let v = negativity(&density(&evolve(&s, &p, t))).unwrap().value;
                    assert!((v - base).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn periodicity_on_reference_ratios() {
        for be in [2.0, 3.0, 4.0] {
            let period = negativity_period(1.0, be).unwrap();
            for i in 0..50 {
                let t = 0.13 * i as f64;
                let a = negativity_closed_form(1.0, be, t);
                let b = negativity_closed_form(1.0, be, t + period);
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn published_equal_superposition_law_values() {
        assert!((equal_superposition_negativity(1.0, 1.5 * PI) - 8.0 / 9.0).abs() < 1e-15);
        for i in 0..=50 {
            let t = PI * i as f64 / 50.0;
            assert!(equal_superposition_negativity(1.0, t) < 1e-15);
        }
    }

    #[test]
    fn equal_superposition_pipeline_matches_exact_law() {
        let s = named(NamedState::Equal);
        for alpha in [0.5, 1.0, 2.0] {
            let p = EvolutionParams::new(alpha, alpha, 1, 2).unwrap();
            for i in 0..=200 {
                let t = 4.0 * PI * i as f64 / 200.0;
                let n = negativity(&density(&evolve(&s, &p, t))).unwrap().value;
                assert!((n - equal_superposition_negativity_exact(alpha, t)).abs() < 1e-9, "t={t}");
            }
        }
    }

    #[test]
    fn equal_superposition_negativity_is_even_in_time() {
        let s = named(NamedState::Equal);
        let p = EvolutionParams::new(1.0, 1.0, 0, 0).unwrap();
        for t in [0.3, 1.1, 2.0, 4.0] {
            let a = negativity(&density(&evolve(&s, &p, t))).unwrap().value;
            let b = negativity(&density(&evolve(&s, &p, -t))).unwrap().value;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_zero_couplings_are_identity() {
        let s = named(NamedState::Equal);
        let p = EvolutionParams::new(0.0, 0.0, 2, 2).unwrap();
        assert_eq!(evolve(&s, &p, 3.0).amplitudes(), s.amplitudes());
    }

    #[test]
    fn occupation_phases_strip_to_exchange_only_dynamics() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = TwoSpinState::new(random_pure_state(&mut rng)).unwrap();
        let p = EvolutionParams::new(0.8, 1.7, 2, 1).unwrap();
        let p0 = EvolutionParams::new(0.8, 1.7, 0, 0).unwrap();
        let t = 1.4;
        let full = density(&evolve(&s, &p, t)).into_matrix();
        let stripped = strip_occupation_phases(&full, &p, t);
        let stripped0 = strip_occupation_phases(&density(&evolve(&s, &p0, t)).into_matrix(), &p0, t);
        assert!((stripped - stripped0).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn rational_detection() {
        assert_eq!(rational_approximation(0.5, 1e-9, 1000), Some((1, 2)));
        assert_eq!(rational_approximation(0.75, 1e-9, 1000), Some((3, 4)));
        assert_eq!(rational_approximation(3.0, 1e-9, 1000), Some((3, 1)));
        assert_eq!(rational_approximation(PI, 1e-9, 1000), None);
        assert_eq!(rational_approximation(1.0 / 3.0 + 1e-12, 1e-9, 1000), Some((1, 3)));
    }

    proptest! {
        #[test]
        fn norm_is_conserved(seed in any::<u64>(), al in -5.0..5.0f64, be in -5.0..5.0f64, t in 0.0..50.0f64, n1 in 0u32..4, n3 in 0u32..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = TwoSpinState::new(random_pure_state(&mut rng)).unwrap();
            let p = EvolutionParams::new(al, be, n1, n3).unwrap();
            prop_assert!((evolve(&s, &p, t).norm_sqr() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn semigroup(seed in any::<u64>(), al in -3.0..3.0f64, be in -3.0..3.0f64, t1 in 0.0..10.0f64, t2 in 0.0..10.0f64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = TwoSpinState::new(random_pure_state(&mut rng)).unwrap();
            let p = EvolutionParams::new(al, be, 1, 2).unwrap();
            let a = evolve(&evolve(&s, &p, t1), &p, t2);
            let b = evolve(&s, &p, t1 + t2);
            for k in 0..9 {
                prop_assert!((a.amps[k] - b.amps[k]).norm() < 1e-12);
            }
        }

        #[test]
        fn pair_symmetry(al in -3.0..3.0f64, be in -3.0..3.0f64, t in 0.0..20.0f64, sign in prop::bool::ANY) {
            let s = if sign { 1.0 } else { -1.0 };
            let h = std::f64::consts::FRAC_1_SQRT_2;
            let mut amps = [C64::new(0.0, 0.0); 9];
            amps[1] = C64::new(h / 2f64.sqrt(), 0.0);
            amps[3] = amps[1] * s;
            amps[5] = C64::new(0.5, 0.0);
            amps[7] = amps[5] * s;
            let st = TwoSpinState::new(amps).unwrap();
            let out = evolve(&st, &EvolutionParams::new(al, be, 0, 1).unwrap(), t);
            prop_assert!((out.amps[3] - out.amps[1] * s).norm() < 1e-14);
            prop_assert!((out.amps[7] - out.amps[5] * s).norm() < 1e-14);
        }

        #[test]
        fn density_is_pure(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = TwoSpinState::new(random_pure_state(&mut rng)).unwrap();
            let rho = density(&s);
            prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
            let m = rho.matrix();
            prop_assert!((m * m - m).iter().all(|z| z.norm() < 1e-12));
        }
    }
}
