//! Mechanics of the dual-mode (two-rod) cantilever.
//!
//! The two rods are modelled as masses `m1`, `m2` on springs `k1` (base to
//! rod 1) and `k2` (rod 1 to rod 2). Damping, base excitation and tip forces
//! are not modelled; the quality factors only enter the validity check.

use crate::constants::HBAR;
use crate::{Error, Result};

/// Threshold for the "damping rate ≪ mode frequency" check.
pub const VALIDITY_THRESHOLD: f64 = 1e-2;

/// Published estimates for the reference geometry, kept next to the formula
/// results so that both can be reported side by side.
pub mod reference {
    /// Spring constant of the long rod, kg/s².
    pub const K1: f64 = 3e-4;
    /// Spring constant of the short rod, kg/s². Direct evaluation of the
    /// cubic formula for the reference geometry gives ≈ 2.85e-4 instead.
    pub const K2: f64 = 2e-4;
    /// `π ν_{1-0}`, rad/s.
    pub const PI_NU_1_0: f64 = 0.54e6;
    /// `π ν_{2-0}`, rad/s.
    pub const PI_NU_2_0: f64 = 1.7e6;
    /// `ω1 = sqrt((k1 + k2)/m1)`, rad/s, as rounded in the estimate.
    pub const OMEGA_1: f64 = 1.2e6;
    /// `ω2 = sqrt(k2/m2)`, rad/s, as rounded in the estimate.
    pub const OMEGA_2: f64 = 1.4e6;
    /// Rod masses, kg.
    pub const M1: f64 = 3.5e-16;
    pub const M2: f64 = 1e-16;
}

fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and > 0, got {value}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialConstants {
    /// Young's modulus, Pa.
    pub young_modulus: f64,
    /// Mass density, kg/m³.
    pub density: f64,
}

impl MaterialConstants {
    /// Si(100): Y = 130 GPa, ρ = 2330 kg/m³.
    pub const SILICON: Self = Self { young_modulus: 130e9, density: 2.33e3 };

    pub fn validate(&self) -> Result<()> {
        require_positive("young_modulus", self.young_modulus)?;
        require_positive("density", self.density)
    }
}

/// Dimensions, masses and quality factors of the two rods. Rod 1 is attached
/// to the base, rod 2 carries the magnetic tips.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CantileverGeometry {
    pub length_1: f64,
    pub length_2: f64,
    pub width_1: f64,
    pub width_2: f64,
    pub thickness_1: f64,
    pub thickness_2: f64,
    pub mass_1: f64,
    pub mass_2: f64,
    pub quality_1: f64,
    pub quality_2: f64,
}

impl CantileverGeometry {
    /// The hybrid Si cantilever used for the published estimates.
    pub const REFERENCE: Self = Self {
        length_1: 15e-6,
        length_2: 9e-6,
        width_1: 300e-9,
        width_2: 200e-9,
        thickness_1: 30e-9,
        thickness_2: 20e-9,
        mass_1: 3.5e-16,
        mass_2: 1e-16,
        quality_1: 1e5,
        quality_2: 1e5,
    };

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("length_1", self.length_1),
            ("length_2", self.length_2),
            ("width_1", self.width_1),
            ("width_2", self.width_2),
            ("thickness_1", self.thickness_1),
            ("thickness_2", self.thickness_2),
            ("mass_1", self.mass_1),
            ("mass_2", self.mass_2),
        ] {
            require_positive(name, v)?;
        }
        for (name, q) in [("quality_1", self.quality_1), ("quality_2", self.quality_2)] {
            if !(q.is_finite() && q >= 1.0) {
                return Err(Error::Domain(format!("{name} must be >= 1, got {q}")));
            }
        }
        Ok(())
    }

    /// `ρ·L·w·d` for each rod. Provided for comparison only; the masses in
    /// the geometry are always the ones used downstream.
    pub fn masses_from_density(&self, mat: &MaterialConstants) -> (f64, f64) {
        (
            mat.density * self.length_1 * self.width_1 * self.thickness_1,
            mat.density * self.length_2 * self.width_2 * self.thickness_2,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpringPair {
    pub k_1: f64,
    pub k_2: f64,
}

impl SpringPair {
    pub fn new(k_1: f64, k_2: f64) -> Result<Self> {
        require_positive("k_1", k_1)?;
        require_positive("k_2", k_2)?;
        Ok(Self { k_1, k_2 })
    }
}

/// Rectangular-beam stiffness `k = Y w d³ / L³` for both rods.
pub fn spring_constants(geom: &CantileverGeometry, mat: &MaterialConstants) -> Result<SpringPair> {
    geom.validate()?;
    mat.validate()?;
    let k = |w: f64, d: f64, l: f64| mat.young_modulus * w * d.powi(3) / l.powi(3);
    SpringPair::new(k(geom.width_1, geom.thickness_1, geom.length_1), k(geom.width_2, geom.thickness_2, geom.length_2))
}

/// Free resonance frequencies `ν_{1-0}`, `ν_{2-0}` in Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeFrequencies {
    pub nu_1_0: f64,
    pub nu_2_0: f64,
}

/// Beam-theory free frequencies, evaluated exactly as
/// `2πν₁ = 1.8² sqrt(Y d₁² / 3ρ) / (2 L₁²)` and
/// `2πν₂ = 1.8² sqrt(Y d₂² / ρ) / (2 L₂²)`.
///
/// Note the asymmetric factor 1/3 under the root for rod 1.
pub fn free_frequencies(geom: &CantileverGeometry, mat: &MaterialConstants) -> Result<FreeFrequencies> {
    mat.validate()?;
    for (name, v) in [
        ("length_1", geom.length_1),
        ("length_2", geom.length_2),
        ("thickness_1", geom.thickness_1),
        ("thickness_2", geom.thickness_2),
    ] {
        require_positive(name, v)?;
    }
    let c = 1.8f64.powi(2);
    let y = mat.young_modulus;
    let rho = mat.density;
    let two_pi = 2.0 * std::f64::consts::PI;
    let w1 = c * (y * geom.thickness_1.powi(2) / (3.0 * rho)).sqrt() / (2.0 * geom.length_1.powi(2));
    let w2 = c * (y * geom.thickness_2.powi(2) / rho).sqrt() / (2.0 * geom.length_2.powi(2));
    Ok(FreeFrequencies { nu_1_0: w1 / two_pi, nu_2_0: w2 / two_pi })
}

/// Normal-mode data of the coupled two-rod system.
///
/// `big_omega_1` is the upper branch. `kappa_i = B/A` is the tip-to-rod-1
/// amplitude ratio of mode `i`, obtained from the first secular equation
/// `(ω1² − Ω_i²) A = ω21² B`; the upper mode is the out-of-phase one, so
/// `kappa_1 < 0 < kappa_2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModes {
    pub omega_1: f64,
    pub omega_2: f64,
    pub omega_21: f64,
    pub big_omega_1: f64,
    pub big_omega_2: f64,
    pub kappa_1: f64,
    pub kappa_2: f64,
    pub eff_mass_1: f64,
    pub eff_mass_2: f64,
    pub zp_amp_1: f64,
    pub zp_amp_2: f64,
}

pub fn normal_modes(springs: &SpringPair, m1: f64, m2: f64) -> Result<NormalModes> {
    require_positive("k_1", springs.k_1)?;
    require_positive("k_2", springs.k_2)?;
    require_positive("m1", m1)?;
    require_positive("m2", m2)?;

    let w1_sq = (springs.k_1 + springs.k_2) / m1;
    let w21_sq = springs.k_2 / m1;
    let w2_sq = springs.k_2 / m2;

    let split = w1_sq - w2_sq;
    let disc = (split * split + 4.0 * w2_sq * w21_sq).sqrt();
    let sum = w1_sq + w2_sq;
    let upper_sq = 0.5 * (sum + disc);
    // Vieta form for the lower root avoids cancellation when the coupling is weak.
    let lower_sq = (w1_sq * w2_sq - w2_sq * w21_sq) / upper_sq;

    let kappa_1 = (split - disc) / (2.0 * w21_sq);
    let kappa_2 = (split + disc) / (2.0 * w21_sq);

    let eff_mass_1 = m1 + m2 * kappa_1 * kappa_1;
    let eff_mass_2 = m1 + m2 * kappa_2 * kappa_2;
    let big_omega_1 = upper_sq.sqrt();
    let big_omega_2 = lower_sq.sqrt();

    Ok(NormalModes {
        omega_1: w1_sq.sqrt(),
        omega_2: w2_sq.sqrt(),
        omega_21: w21_sq.sqrt(),
        big_omega_1,
        big_omega_2,
        kappa_1,
        kappa_2,
        eff_mass_1,
        eff_mass_2,
        zp_amp_1: zero_point_amplitude(eff_mass_1, big_omega_1),
        zp_amp_2: zero_point_amplitude(eff_mass_2, big_omega_2),
    })
}

/// `sqrt(ħ / (2 M Ω))`.
pub fn zero_point_amplitude(eff_mass: f64, omega: f64) -> f64 {
    (HBAR / (2.0 * eff_mass * omega)).sqrt()
}

impl NormalModes {
    /// Rayleigh quotient `(k1 + k2 (κ − 1)²) / (m1 + m2 κ²)`; equals `Ω²` when
    /// `κ` is the amplitude ratio of a true normal mode.
    pub fn rayleigh_quotient(springs: &SpringPair, m1: f64, m2: f64, kappa: f64) -> f64 {
        (springs.k_1 + springs.k_2 * (kappa - 1.0).powi(2)) / (m1 + m2 * kappa * kappa)
    }

    /// Residuals of both secular equations for mode `i` (1 or 2), with the
    /// amplitude vector `(A, B) = (1, κ_i)`, relative to `ω1² + ω2²`.
    pub fn secular_residuals(&self, mode: usize) -> (f64, f64) {
        let (big, kappa) = match mode {
            1 => (self.big_omega_1, self.kappa_1),
            _ => (self.big_omega_2, self.kappa_2),
        };
        let w1 = self.omega_1.powi(2);
        let w2 = self.omega_2.powi(2);
        let w21 = self.omega_21.powi(2);
        let om = big * big;
        let scale = w1 + w2;
        (((w1 - om) - w21 * kappa).abs() / scale, (-w2 + (w2 - om) * kappa).abs() / scale)
    }
}

/// Magnetic tip field and the resulting spin–mode couplings
/// `λ_i = g μ_B G a_i0 / ħ` in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TipField {
    /// Field gradient `G_m`, T/m.
    pub gradient: f64,
    pub g_factor: f64,
    pub bohr_magneton: f64,
    pub lambda_1: f64,
    pub lambda_2: f64,
}

impl TipField {
    /// There is deliberately no default gradient.
    pub fn new(gradient: f64, modes: &NormalModes) -> Result<Self> {
        Self::with_g_factor(gradient, crate::constants::G_FACTOR_NV, modes)
    }

    pub fn with_g_factor(gradient: f64, g_factor: f64, modes: &NormalModes) -> Result<Self> {
        if !gradient.is_finite() {
            return Err(Error::Domain(format!("gradient must be finite, got {gradient}")));
        }
        require_positive("g_factor", g_factor)?;
        let mu_b = crate::constants::BOHR_MAGNETON;
        let scale = g_factor * mu_b * gradient / HBAR;
        Ok(Self {
            gradient,
            g_factor,
            bohr_magneton: mu_b,
            lambda_1: scale * modes.zp_amp_1,
            lambda_2: scale * modes.zp_amp_2,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    /// `(2π ν_{1-0} / Q1) / ω1`.
    pub ratio_1: f64,
    /// `(2π ν_{2-0} / Q2) / ω2`.
    pub ratio_2: f64,
    pub pass: bool,
}

/// Checks that the damping rates `2πν_{i-0}/Q_i` are negligible against the
/// mode frequencies `ω_i` (strictly below [`VALIDITY_THRESHOLD`]).
pub fn validity_check(geom: &CantileverGeometry, free: &FreeFrequencies, modes: &NormalModes) -> ValidityReport {
    let two_pi = 2.0 * std::f64::consts::PI;
    let ratio_1 = two_pi * free.nu_1_0 / geom.quality_1 / modes.omega_1;
    let ratio_2 = two_pi * free.nu_2_0 / geom.quality_2 / modes.omega_2;
    ValidityReport { ratio_1, ratio_2, pass: ratio_1 < VALIDITY_THRESHOLD && ratio_2 < VALIDITY_THRESHOLD }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn reference_modes() -> NormalModes {
        let springs = SpringPair::new(reference::K1, reference::K2).unwrap();
        normal_modes(&springs, reference::M1, reference::M2).unwrap()
    }

    #[test]
    fn k1_matches_published_estimate() {
        let k = spring_constants(&CantileverGeometry::REFERENCE, &MaterialConstants::SILICON).unwrap();
        assert!((k.k_1 - 3e-4).abs() / 3e-4 < 0.1, "k1 = {}", k.k_1);
    }

    #[test]
    fn k2_by_direct_evaluation() {
        // 130e9 * 200e-9 * (20e-9)^3 / (9e-6)^3 = 2.08e-19 / 7.29e-16
        let expected = 130e9 * 200e-9 * 8e-24 / 7.29e-16;
        let k = spring_constants(&CantileverGeometry::REFERENCE, &MaterialConstants::SILICON).unwrap();
        assert_relative_eq!(k.k_2, expected, max_relative = 1e-12);
        assert!((k.k_2 - 2.853e-4).abs() < 1e-7);
    }

    #[test]
    fn stiffness_scales_linearly_when_all_dimensions_double() {
        let g = CantileverGeometry::REFERENCE;
        let mut g2 = g;
        g2.length_1 *= 2.0;
        g2.width_1 *= 2.0;
        g2.thickness_1 *= 2.0;
        let m = MaterialConstants::SILICON;
        let a = spring_constants(&g, &m).unwrap();
        let b = spring_constants(&g2, &m).unwrap();
        assert_relative_eq!(b.k_1, 2.0 * a.k_1, max_relative = 1e-14);
    }

    #[test]
    fn non_positive_geometry_is_a_domain_error() {
        let mut g = CantileverGeometry::REFERENCE;
        g.width_2 = 0.0;
        assert!(matches!(spring_constants(&g, &MaterialConstants::SILICON), Err(Error::Domain(_))));
        let mut g = CantileverGeometry::REFERENCE;
        g.quality_1 = 0.5;
        assert!(g.validate().is_err());
        assert!(SpringPair::new(-1.0, 1.0).is_err());
        assert!(normal_modes(&SpringPair { k_1: 1.0, k_2: 1.0 }, 0.0, 1.0).is_err());
    }

    #[test]
    fn free_frequencies_follow_printed_formulas() {
        let g = CantileverGeometry::REFERENCE;
        let m = MaterialConstants::SILICON;
        let f = free_frequencies(&g, &m).unwrap();
        // Hand evaluation: 3.24 * sqrt(130e9 * 9e-16 / 6990) / (2 * 2.25e-10)
        let w1 = 3.24 * (130e9 * 9e-16 / 6990.0f64).sqrt() / 4.5e-10;
        assert_relative_eq!(2.0 * std::f64::consts::PI * f.nu_1_0, w1, max_relative = 1e-12);
        let w2 = 3.24 * (130e9 * 4e-16 / 2330.0f64).sqrt() / (2.0 * 81e-12);
        assert_relative_eq!(2.0 * std::f64::consts::PI * f.nu_2_0, w2, max_relative = 1e-12);
    }

    #[test]
    fn free_frequency_limits() {
        let m = MaterialConstants::SILICON;
        let g = CantileverGeometry::REFERENCE;
        let mut thin = g;
        thin.thickness_1 = 1e-30;
        thin.thickness_2 = 1e-30;
        let f = free_frequencies(&thin, &m).unwrap();
        assert!(f.nu_1_0 < 1e-10 && f.nu_2_0 < 1e-10);

        let mut long = g;
        long.length_1 *= 2.0;
        long.length_2 *= 2.0;
        let a = free_frequencies(&g, &m).unwrap();
        let b = free_frequencies(&long, &m).unwrap();
        assert_relative_eq!(b.nu_1_0, a.nu_1_0 / 4.0, max_relative = 1e-14);
        assert_relative_eq!(b.nu_2_0, a.nu_2_0 / 4.0, max_relative = 1e-14);
    }

    #[test]
    fn reference_frequencies() {
        let nm = reference_modes();
        assert_relative_eq!(nm.omega_1, (5e-4f64 / 3.5e-16).sqrt(), max_relative = 1e-14);
        assert!((nm.omega_1 - 1.195e6).abs() < 1e3);
        assert!((nm.omega_2 - 1.414e6).abs() < 1e3);
    }

    #[test]
    fn decoupled_limit() {
        let nm = normal_modes(&SpringPair { k_1: 3e-4, k_2: 1e-30 }, 3.5e-16, 1e-16).unwrap();
        let hi = nm.omega_1.max(nm.omega_2);
        let lo = nm.omega_1.min(nm.omega_2);
        assert_relative_eq!(nm.big_omega_1, hi, max_relative = 1e-12);
        assert_relative_eq!(nm.big_omega_2, lo, max_relative = 1e-12);
    }

    #[test]
    fn kappa_signs_and_product() {
        let nm = reference_modes();
        assert!(nm.kappa_1 < 0.0 && nm.kappa_2 > 0.0);
        // κ1 κ2 = −ω2²/ω21² = −m1/m2
        assert_relative_eq!(nm.kappa_1 * nm.kappa_2, -reference::M1 / reference::M2, max_relative = 1e-12);
    }

    #[test]
    fn validity_on_reference_and_bad_q() {
        let g = CantileverGeometry::REFERENCE;
        let f = free_frequencies(&g, &MaterialConstants::SILICON).unwrap();
        let nm = reference_modes();
        let r = validity_check(&g, &f, &nm);
        assert!(r.pass);
        // 2π·1.4825e5/(1e5·1.1952e6) and 2π·4.7553e5/(1e5·1.4142e6)
        assert!((r.ratio_1 - 7.7936e-6).abs() < 1e-9, "{}", r.ratio_1);
        assert!((r.ratio_2 - 2.1127e-5).abs() < 1e-9, "{}", r.ratio_2);

        let mut bad = g;
        bad.quality_1 = 1.0;
        bad.quality_2 = 1.0;
        assert!(!validity_check(&bad, &f, &nm).pass);
    }

    #[test]
    fn validity_threshold_is_strict() {
        let g = CantileverGeometry::REFERENCE;
        let nm = reference_modes();
        let two_pi = 2.0 * std::f64::consts::PI;
        // Choose ν so that ratio_1 lands exactly on the threshold.
        let nu_1 = VALIDITY_THRESHOLD * g.quality_1 * nm.omega_1 / two_pi;
        let free = FreeFrequencies { nu_1_0: nu_1, nu_2_0: 0.0 };
        let r = validity_check(&g, &free, &nm);
        assert_eq!(r.ratio_1, VALIDITY_THRESHOLD);
        assert!(!r.pass);
    }

    #[test]
    fn tip_couplings_scale_with_zero_point_amplitude() {
        let nm = reference_modes();
        let tip = TipField::new(1e5, &nm).unwrap();
        assert_relative_eq!(tip.lambda_1 / tip.lambda_2, nm.zp_amp_1 / nm.zp_amp_2, max_relative = 1e-14);
        let expected = 2.0 * crate::constants::BOHR_MAGNETON * 1e5 * nm.zp_amp_1 / HBAR;
        assert_relative_eq!(tip.lambda_1, expected, max_relative = 1e-14);
    }

    /// Independent root finder for the secular determinant
    /// `(ω1² − x)(ω2² − x) − ω21² ω2² = 0` by bisection.
    fn bisect_roots(w1: f64, w2: f64, w21: f64) -> (f64, f64) {
        let f = |x: f64| (w1 - x) * (w2 - x) - w21 * w2;
        let solve = |mut a: f64, mut b: f64| {
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if f(a).signum() == f(m).signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            0.5 * (a + b)
        };
        let lo = w1.min(w2);
        let hi = w1.max(w2);
        let big = w1 + w2 + w21 + 1.0;
        (solve(hi, big), solve(0.0, lo))
    }

    proptest! {
        #[test]
        fn secular_roots_match_bisection(
            k1 in 1e-6f64..1e-2, k2 in 1e-6f64..1e-2,
            m1 in 1e-17f64..1e-14, m2 in 1e-17f64..1e-14,
        ) {
            let s = SpringPair::new(k1, k2).unwrap();
            let nm = normal_modes(&s, m1, m2).unwrap();
            let (w1, w2, w21) = (nm.omega_1.powi(2), nm.omega_2.powi(2), nm.omega_21.powi(2));
            let (hi, lo) = bisect_roots(w1, w2, w21);
            prop_assert!((nm.big_omega_1.powi(2) - hi).abs() <= 1e-10 * hi);
            prop_assert!((nm.big_omega_2.powi(2) - lo).abs() <= 1e-9 * hi);
            // Vieta
            let s2 = nm.big_omega_1.powi(2) + nm.big_omega_2.powi(2);
            prop_assert!((s2 - (w1 + w2)).abs() <= 1e-12 * (w1 + w2));
            let p = nm.big_omega_1.powi(2) * nm.big_omega_2.powi(2);
            let p_ref = w1 * w2 - w2 * w21;
            prop_assert!((p - p_ref).abs() <= 1e-10 * p_ref);
        }

        #[test]
        fn mode_invariants(
            k1 in 1e-6f64..1e-2, k2 in 1e-6f64..1e-2,
            m1 in 1e-17f64..1e-14, m2 in 1e-17f64..1e-14,
        ) {
            let s = SpringPair::new(k1, k2).unwrap();
            let nm = normal_modes(&s, m1, m2).unwrap();
            // level repulsion
            prop_assert!(nm.big_omega_1 >= nm.omega_1.max(nm.omega_2) * (1.0 - 1e-14));
            prop_assert!(nm.omega_1.min(nm.omega_2) >= nm.big_omega_2 * (1.0 - 1e-14));
            prop_assert!(nm.kappa_1 < 0.0 && nm.kappa_2 > 0.0);
            for mode in [1, 2] {
                let (r1, r2) = nm.secular_residuals(mode);
                prop_assert!(r1 < 1e-10 && r2 < 1e-10, "mode {mode}: {r1} {r2}");
            }
            let q1 = NormalModes::rayleigh_quotient(&s, m1, m2, nm.kappa_1);
            let q2 = NormalModes::rayleigh_quotient(&s, m1, m2, nm.kappa_2);
            prop_assert!((q1 - nm.big_omega_1.powi(2)).abs() <= 1e-10 * q1);
            prop_assert!((q2 - nm.big_omega_2.powi(2)).abs() <= 1e-10 * q2);
            prop_assert!(nm.eff_mass_1 > 0.0 && nm.eff_mass_2 > 0.0);
        }

        #[test]
        fn zero_point_amplitude_is_monotone(m in 1e-17f64..1e-13, w in 1e3f64..1e9, f in 1.01f64..10.0) {
            let a = zero_point_amplitude(m, w);
            prop_assert!(zero_point_amplitude(m * f, w) < a);
            prop_assert!(zero_point_amplitude(m, w * f) < a);
        }
    }
}
