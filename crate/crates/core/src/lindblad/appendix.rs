//! Published closed-form solution of the master equation, transcribed
//! element by element exactly as printed, including apparent misprints.
//! It serves as an analytic oracle: [`super::validate`] compares every
//! element against the numerical integrator and flags disagreements.
//!
//! Right-hand-side `ρ_ij` are initial values (1-based indices). Terms written
//! as indefinite integrals are the printed antiderivatives evaluated at `t`.
//! Every division goes through [`Ctx::inv`], so an element whose printed form
//! divides by a vanishing denominator evaluates to `None`.

#![allow(clippy::neg_multiply)]

use super::LindbladSystem;
use crate::basis::DIM;
use crate::entanglement::DensityMatrix;
use crate::linalg::CMat9;
use crate::{Error, Result, C64};

/// Denominators with magnitude below this are treated as zero.
pub const DENOMINATOR_FLOOR: f64 = 1e-12;

/// Element values, `None` where the printed form is singular.
pub type Elements = [[Option<C64>; DIM]; DIM];

const I: C64 = C64::new(0.0, 1.0);

struct Ctx {
    r: CMat9,
    a: f64,
    b: f64,
    ge: f64,
    gd: f64,
    t: f64,
}

impl Ctx {
    /// Initial `ρ_kl`, 1-based.
    fn r(&self, k: usize, l: usize) -> C64 {
        self.r[(k - 1, l - 1)]
    }
    fn ex(&self, rate: f64) -> f64 {
        (-rate * self.t).exp()
    }
    fn inv(&self, den: f64) -> Option<f64> {
        (den.abs() > DENOMINATOR_FLOOR).then(|| 1.0 / den)
    }
    fn ca(&self) -> f64 {
        (self.a * self.t).cos()
    }
    fn sa(&self) -> f64 {
        (self.a * self.t).sin()
    }
    fn cb(&self) -> f64 {
        (self.b * self.t).cos()
    }
    fn sb(&self) -> f64 {
        (self.b * self.t).sin()
    }
    fn c2a(&self) -> f64 {
        (2.0 * self.a * self.t).cos()
    }
    fn s2a(&self) -> f64 {
        (2.0 * self.a * self.t).sin()
    }
    fn c2b(&self) -> f64 {
        (2.0 * self.b * self.t).cos()
    }
    fn s2b(&self) -> f64 {
        (2.0 * self.b * self.t).sin()
    }
    fn amb(&self) -> f64 {
        self.a - self.b
    }
    fn apb(&self) -> f64 {
        self.a + self.b
    }
    /// `1/(w² + g²)`.
    fn d(&self, w: f64, g: f64) -> Option<f64> {
        self.inv(w * w + g * g)
    }
    /// `1/(4w² + g²)`.
    fn d4(&self, w: f64, g: f64) -> Option<f64> {
        self.inv(4.0 * w * w + g * g)
    }
    /// `(w sin wt − g cos wt)/(w² + g²)`.
    fn sk(&self, w: f64, g: f64) -> Option<f64> {
        Some((w * (w * self.t).sin() - g * (w * self.t).cos()) * self.d(w, g)?)
    }
    /// `(w cos wt + g sin wt)/(w² + g²)`.
    fn ck(&self, w: f64, g: f64) -> Option<f64> {
        Some((w * (w * self.t).cos() + g * (w * self.t).sin()) * self.d(w, g)?)
    }
    /// `(2w sin 2wt − g cos 2wt)/(4w² + g²)`.
    fn sk2(&self, w: f64, g: f64) -> Option<f64> {
        let x = 2.0 * w * self.t;
        Some((2.0 * w * x.sin() - g * x.cos()) * self.d4(w, g)?)
    }
    /// `(2w cos 2wt + g sin 2wt)/(4w² + g²)`.
    fn ck2(&self, w: f64, g: f64) -> Option<f64> {
        let x = 2.0 * w * self.t;
        Some((2.0 * w * x.cos() + g * x.sin()) * self.d4(w, g)?)
    }

    // Printed variants that deviate from the regular kernels above.

    /// `(w sin wt + g cos wt)/(w² + g²)`.
    fn sk_plus(&self, w: f64, g: f64) -> Option<f64> {
        Some((w * (w * self.t).sin() + g * (w * self.t).cos()) * self.d(w, g)?)
    }
    /// `(w cos wt + g cos wt)/(w² + g²)`.
    fn ck_cos(&self, w: f64, g: f64) -> Option<f64> {
        Some((w * (w * self.t).cos() + g * (w * self.t).cos()) * self.d(w, g)?)
    }
    /// `(w sin wt − g cos αt)/(w² + g²)`.
    fn sk_alpha(&self, w: f64, g: f64) -> Option<f64> {
        Some((w * (w * self.t).sin() - g * self.ca()) * self.d(w, g)?)
    }
    /// `(w sin wt − g cos wt)/(w² − g²)`.
    fn sk_minus_den(&self, w: f64, g: f64) -> Option<f64> {
        Some((w * (w * self.t).sin() - g * (w * self.t).cos()) * self.inv(w * w - g * g)?)
    }
}

/// Sums of the `(α−β)` and `(α+β)` kernels with sign `s` on the second.
macro_rules! pair {
    ($c:expr, $f:ident, $g:expr, $s:expr) => {
        $c.$f($c.amb(), $g)? + $s * $c.$f($c.apb(), $g)?
    };
}

/// Evaluates every element at time `t`.
pub fn appendix_elements(rho0: &CMat9, sys: &LindbladSystem, t: f64) -> Elements {
    let c = Ctx { r: *rho0, a: sys.alpha, b: sys.beta, ge: sys.rates.gamma_e, gd: sys.rates.gamma_d, t };
    std::array::from_fn(|k| std::array::from_fn(|l| element(&c, k + 1, l + 1)))
}

/// Full matrix at time `t`; fails if any printed element is singular.
pub fn appendix_eval(rho0: &DensityMatrix, sys: &LindbladSystem, t: f64) -> Result<CMat9> {
    let el = appendix_elements(rho0.matrix(), sys, t);
    let mut out = CMat9::zeros();
    for k in 0..DIM {
        for l in 0..DIM {
            out[(k, l)] = el[k][l].ok_or_else(|| {
                Error::Degenerate(format!(
                    "closed form for rho_{}{} divides by zero at alpha={}, beta={}, gamma_e={}, gamma_d={}",
                    k + 1,
                    l + 1,
                    sys.alpha,
                    sys.beta,
                    sys.rates.gamma_e,
                    sys.rates.gamma_d
                ))
            })?;
        }
    }
    Ok(out)
}

/// Elements whose printed form contains no parameter-dependent denominator.
#[rustfmt::skip]
pub fn always_defined(k: usize, l: usize) -> bool {
    !matches!(
        (k, l),
        (7, 7) | (7, 4) | (7, 2) | (7, 1)
            | (4, 7) | (4, 4) | (4, 3) | (4, 2) | (4, 1)
            | (3, 4) | (3, 3) | (3, 2) | (3, 1)
            | (2, 7) | (2, 4) | (2, 3) | (2, 2) | (2, 1)
            | (1, 7) | (1, 4) | (1, 3) | (1, 2)
    )
}

fn element(c: &Ctx, k: usize, l: usize) -> Option<C64> {
    let (ge, gd) = (c.ge, c.gd);
    let (ca, sa, cb, sb) = (c.ca(), c.sa(), c.cb(), c.sb());
    let r = |i, j| c.r(i, j);
    let v = match (k, l) {
        // Row 9.
        (9, 9) => r(9, 9) * c.ex(2.0 * ge),
        (9, 8) => (r(9, 8) * cb - I * r(9, 6) * sb) * c.ex((gd + 3.0 * ge) / 2.0),
        // Printed with the initial-value subscript missing.
        (9, 7) => r(9, 7) * c.ex(1.5 * ge),
        (9, 6) => (r(9, 6) * cb - I * r(9, 8) * sb) * c.ex((gd + 3.0 * ge) / 2.0),
        (9, 5) => r(9, 5) * c.ex(gd + ge),
        (9, 4) => (r(9, 4) * ca - I * r(9, 2) * sa) * c.ex(gd / 2.0 + ge),
        (9, 3) => r(9, 3) * c.ex(1.5 * ge),
        (9, 2) => (r(9, 2) * ca - I * r(9, 4) * sa) * c.ex(gd / 2.0 + ge),
        (9, 1) => r(9, 1) * c.ex(ge),

        // Row 8.
        (8, 9) => (r(8, 9) * cb + I * r(6, 9) * sb) * c.ex((gd + 3.0 * ge) / 2.0),
        (8, 8) => {
            (r(6, 6) * (1.0 - c.c2b()) + r(8, 8) * (1.0 + c.c2b()) + I * r(6, 8) * c.s2b() - I * r(8, 6) * c.s2b())
                * 0.5
                * c.ex(gd + ge)
        }
        (8, 7) => (r(8, 7) * cb + I * r(6, 7) * sb) * c.ex(gd / 2.0 + ge),
        (8, 6) => {
            (r(6, 8) * (1.0 - c.c2b()) + r(8, 6) * (1.0 + c.c2b()) - I * r(8, 8) * c.s2b() + I * r(6, 6) * c.s2b())
                * 0.5
                * c.ex(gd + ge)
        }
        (8, 5) => (r(8, 5) * cb + I * r(6, 5) * sb) * c.ex((3.0 * gd + ge) / 2.0),
        (8, 4) => {
            (sa * (-I * r(8, 2) * cb + r(6, 2) * sb) + ca * (r(8, 4) * cb + I * r(6, 4) * sb))
                * c.ex((2.0 * gd + ge) / 2.0)
        }
        (8, 3) => (r(8, 3) * cb + I * r(6, 3) * sb) * c.ex((gd + 2.0 * ge) / 2.0),
        (8, 2) => {
            (ca * (r(8, 2) * cb + I * r(6, 2) * sb) + sa * (-I * r(8, 4) * cb + r(6, 4) * sb))
                * c.ex((2.0 * gd + ge) / 2.0)
        }
        (8, 1) => (r(8, 1) * cb + I * r(6, 1) * sb) * c.ex((gd + ge) / 2.0),

        // Row 7.
        (7, 9) => r(7, 9) * c.ex(1.5 * ge),
        (7, 8) => (r(7, 8) * cb - I * r(7, 6) * sb) * c.ex((gd + 2.0 * ge) / 2.0),
        (7, 7) => {
            let q = c.d4(c.b, gd)?;
            let head = (r(7, 7) * 2.0 + r(6, 6) + r(8, 8) + r(9, 9) * 2.0
                - (r(6, 6) - r(8, 8)) * (gd * gd * q)
                - (r(8, 6) - r(6, 8)) * (2.0 * c.b * gd * q) * I)
                * 0.5
                * c.ex(ge);
            head - (r(6, 6) - r(8, 8)) * (gd / 2.0 * c.sk2(c.b, gd)? * c.ex(gd + ge))
                + I * (r(8, 6) - r(6, 8)) * (gd / 2.0 * c.ck2(c.b, gd)? * c.ex(gd + ge))
                - (r(6, 6) + r(8, 8)) * 0.5 * c.ex(ge + gd)
                - r(9, 9) * c.ex(2.0 * ge)
        }
        (7, 6) => (r(7, 6) * cb - I * r(7, 8) * sb) * c.ex((gd + 2.0 * ge) / 2.0),
        (7, 5) => r(7, 5) * c.ex((2.0 * gd + ge) / 2.0),
        (7, 4) => {
            let e = c.ex((gd + ge) / 2.0);
            let (is, ic) = (integral_s74(c)?, integral_c74(c)?);
            (gamma_74(c)? * ca - I * gamma_72(c)? * sa) * e + (ic * ca + is * sa) * e
        }
        (7, 3) => r(7, 3) * c.ex(ge),
        (7, 2) => {
            let e = c.ex((gd + ge) / 2.0);
            let (is, ic) = (integral_s74(c)?, integral_c74(c)?);
            (gamma_72(c)? * ca - I * gamma_74(c)? * sa) * e + I * e * (is * ca - ic * sa)
        }
        (7, 1) => {
            let (amb, apb) = (c.amb(), c.apb());
            gamma_71(c)? * c.ex(ge / 2.0) - r(9, 3) * c.ex(1.5 * ge)
                + (r(8, 2) * pair!(c, sk, gd, 1.0)
                    + I * r(6, 2) * (c.ck(amb, gd)? - c.ck_cos(apb, gd)?)
                    + I * r(8, 4) * (c.ck(amb, gd)? + c.ck_cos(apb, gd)?)
                    + r(6, 4) * pair!(c, sk, gd, -1.0))
                    * (gd / 2.0 * c.ex((2.0 * gd + ge) / 2.0))
        }

        // Row 6.
        (6, 9) => (r(6, 9) * cb + I * r(8, 9) * sb) * c.ex((gd + 3.0 * ge) / 2.0),
        (6, 8) => {
            (r(8, 6) * (1.0 - c.c2b()) + r(6, 8) * (1.0 + c.c2b()) + I * r(8, 8) * c.s2b() - I * r(6, 6) * c.s2b())
                * 0.5
                * c.ex(gd + ge)
        }
        (6, 7) => (r(6, 7) * cb + I * r(8, 7) * sb) * c.ex(gd / 2.0 + ge),
        (6, 6) => {
            (r(8, 8) * (1.0 - c.c2b()) + r(6, 6) * (1.0 + c.c2b()) - I * r(6, 8) * c.s2b() + I * r(8, 6) * c.s2b())
                * 0.5
                * c.ex(gd + ge)
        }
        (6, 5) => (r(6, 5) * cb + I * r(8, 5) * sb) * c.ex((3.0 * gd + ge) / 2.0),
        (6, 4) => {
            (ca * (r(6, 4) * cb + I * r(8, 4) * sb) + sa * (-I * r(6, 2) * cb + r(8, 2) * sb))
                * c.ex((2.0 * gd + ge) / 2.0)
        }
        (6, 3) => (r(6, 3) * cb + I * r(8, 3) * sb) * c.ex((gd + 2.0 * ge) / 2.0),
        (6, 2) => {
            (sa * (-I * r(6, 4) * cb + r(8, 4) * sb) + ca * (r(6, 2) * cb + I * r(8, 2) * sb))
                * c.ex((2.0 * gd + ge) / 2.0)
        }
        (6, 1) => (r(6, 1) * cb + I * r(8, 1) * sb) * c.ex((gd + ge) / 2.0),

        // Row 5.
        (5, 9) => r(5, 9) * c.ex(gd + ge),
        (5, 8) => (r(5, 8) * cb - I * r(5, 6) * sb) * c.ex((3.0 * gd + ge) / 2.0),
        (5, 7) => r(5, 7) * c.ex((2.0 * gd + ge) / 2.0),
        (5, 6) => (r(5, 6) * cb - I * r(5, 8) * sb) * c.ex((3.0 * gd + ge) / 2.0),
        (5, 5) => r(5, 5) * c.ex(2.0 * gd),
        (5, 4) => (r(5, 4) * ca - I * r(5, 2) * sa) * c.ex(1.5 * gd),
        (5, 3) => r(5, 3) * c.ex((2.0 * gd + ge) / 2.0),
        (5, 2) => (r(5, 2) * ca - I * r(5, 4) * sa) * c.ex(1.5 * gd),
        (5, 1) => r(5, 1) * c.ex(gd),

        // Row 4.
        (4, 9) => (r(4, 9) * ca - I * r(2, 9) * sa) * c.ex((gd + 2.0 * ge) / 2.0),
        // Printed with the product ρ26·ρ28 in the sin αt sin βt term.
        (4, 8) => {
            (sa * (I * r(2, 8) * cb + r(2, 6) * r(2, 8) * sb) + ca * (r(4, 8) * cb - I * r(4, 6) * sb))
                * c.ex((2.0 * gd + ge) / 2.0)
        }
        (4, 7) => {
            let e = c.ex((gd + ge) / 2.0);
            let (is, ic) = (integral_s47(c)?, integral_c47(c)?);
            (gamma_47(c)? * ca + I * gamma_27(c)? * sa) * e + (ic * ca + is * sa) * e
        }
        (4, 6) => {
            (ca * (r(4, 6) * cb - I * r(4, 8) * sb) + sa * (I * r(2, 6) * cb + r(2, 8) * sb))
                * c.ex((2.0 * gd + ge) / 2.0)
        }
        (4, 5) => (r(4, 5) * ca + I * r(2, 5) * sa) * c.ex(1.5 * gd),
        (4, 4) => {
            let (js, jc) = (j_sin(c)?, j_cos(c)?);
            let (gx, gy) = (gamma_x(c)?, gamma_y(c)?);
            (r(2, 2) + r(4, 4) + r(5, 5) * 2.0 + r(8, 8) + r(6, 6)) * 0.5 * c.ex(gd)
                - r(5, 5) * c.ex(2.0 * gd)
                - (r(8, 8) + r(6, 6)) * 0.5 * c.ex(gd + ge)
                - (gx * c.c2a() - I * gy * c.s2a()) * (c.ex(gd) / 2.0)
                - (jc * c.c2a() + js * c.s2a()) * (gd * c.ex(gd) / 2.0)
        }
        (4, 3) => {
            let e = c.ex((gd + ge) / 2.0);
            let (is, ic) = (integral_s23(c)?, integral_c23(c)?);
            (gamma_43(c)? * ca + I * gamma_23(c)? * sa - I * ca * is + I * sa * ic) * e
        }
        (4, 2) => {
            let (js, jc) = (j_sin(c)?, j_cos(c)?);
            let (gx, gy) = (gamma_x(c)?, gamma_y(c)?);
            (r(2, 4) + r(4, 2)) * c.ex(gd)
                - ((gy * ca - I * gx * sa) * c.ex(gd) + I * gd * c.ex(gd) * (js * c.c2a() - jc * c.s2a()))
        }
        (4, 1) => {
            let e = c.ex(gd / 2.0);
            let (l41, l21) = (integral_f41(c)?, integral_f21(c)?);
            gamma_41(c)? * e * ca + I * gamma_21(c)? * e * sa + e * (ca * l41 + I * sa * l21)
        }

        // Row 3.
        (3, 9) => r(3, 9) * c.ex(1.5 * ge),
        (3, 8) => (r(3, 8) * cb - I * r(3, 6) * sb) * c.ex(gd / 2.0 + ge),
        (3, 7) => r(3, 7) * c.ex(ge),
        (3, 6) => (r(3, 6) * cb - I * r(3, 8) * sb) * c.ex(gd / 2.0 + ge),
        (3, 5) => r(3, 5) * c.ex(gd + ge / 2.0),
        (3, 4) => {
            let e = c.ex((gd + ge) / 2.0);
            let (is, ic) = (integral_s32(c)?, integral_c32(c)?);
            (gamma_34(c)? * ca - I * gamma_32(c)? * sa + I * ca * is - I * sa * ic) * e
        }
        // Printed with 2ρ77 where the mirror of ρ77 suggests 2ρ33.
        (3, 3) => {
            let q = c.d4(c.b, gd)?;
            let head = (r(7, 7) * 2.0
                + r(6, 6)
                + r(8, 8)
                + r(9, 9) * 2.0
                + (r(6, 6) - r(8, 8)) * (gd * gd * q)
                + (r(8, 6) - r(6, 8)) * (2.0 * c.b * gd * q) * I)
                * 0.5
                * c.ex(ge);
            head + (r(6, 6) - r(8, 8)) * (gd / 2.0 * c.sk2(c.b, gd)? * c.ex(gd + ge))
                - I * (r(8, 6) - r(6, 8)) * (gd / 2.0 * c.ck2(c.b, gd)? * c.ex(gd + ge))
                - (r(6, 6) + r(8, 8)) * 0.5 * c.ex(ge + gd)
                - r(9, 9) * c.ex(2.0 * ge)
        }
        (3, 2) => {
            let e = c.ex((gd + ge) / 2.0);
            let (is, ic) = (integral_s32(c)?, integral_c32(c)?);
            (gamma_32(c)? * ca - I * gamma_34(c)? * sa + ca * ic + sa * is) * e
        }
        (3, 1) => {
            let apb = c.apb();
            let amb = c.amb();
            gamma_31(c)? * c.ex(ge / 2.0) - r(9, 7) * c.ex(1.5 * ge)
                + (r(6, 4) * (c.sk_alpha(amb, gd)? + c.sk(apb, gd)?)
                    + I * r(8, 4) * pair!(c, ck, gd, -1.0)
                    + I * r(6, 2) * pair!(c, ck, gd, 1.0)
                    + r(8, 2) * (c.sk_alpha(amb, gd)? - c.sk(apb, gd)?))
                    * (gd * c.ex(gd + ge / 2.0) / 2.0)
        }

        // Row 2.
        (2, 9) => (r(2, 9) * ca - I * r(4, 9) * sa) * c.ex(gd / 2.0 + ge),
        (2, 8) => {
            (ca * (r(2, 8) * cb - I * r(2, 6) * sb) + sa * (I * r(4, 8) * cb + r(4, 6) * sb)) * c.ex(ge / 2.0 + gd)
        }
        (2, 7) => {
            let e = c.ex((gd + ge) / 2.0);
            let (is, ic) = (integral_s47(c)?, integral_c47(c)?);
            (gamma_27(c)? * ca + I * gamma_47(c)? * sa) * e - I * e * (ca * is - sa * ic)
        }
        // Printed with cos βt where the mirror of ρ28 suggests cos αt.
        (2, 6) => {
            (sa * (I * r(4, 6) * cb + r(4, 8) * sb) + cb * (r(2, 6) * cb - I * r(2, 8) * sb)) * c.ex(ge / 2.0 + gd)
        }
        (2, 5) => (r(2, 5) * ca + I * r(4, 5) * sa) * c.ex(1.5 * gd),
        (2, 4) => {
            let (js, jc) = (j_sin(c)?, j_cos(c)?);
            let (gx, gy) = (gamma_x(c)?, gamma_y(c)?);
            (r(2, 4) + r(4, 2)) * c.ex(gd)
                + ((gy * ca - I * gx * sa) * c.ex(gd) + I * gd * c.ex(gd) * (js * c.c2a() - jc * c.s2a()))
        }
        (2, 3) => {
            let e = c.ex((gd + ge) / 2.0);
            let (is, ic) = (integral_s23(c)?, integral_c23(c)?);
            (gamma_23(c)? * ca + I * gamma_43(c)? * sa + ca * ic + sa * is) * e
        }
        (2, 2) => {
            let (js, jc) = (j_sin(c)?, j_cos(c)?);
            let (gx, gy) = (gamma_x(c)?, gamma_y(c)?);
            (r(2, 2) + r(4, 4) + r(5, 5) * 2.0 + r(8, 8) + r(6, 6)) * 0.5 * c.ex(gd)
                - r(5, 5) * c.ex(2.0 * gd)
                - (r(8, 8) + r(6, 6)) * 0.5 * c.ex(gd + ge)
                + (gx * c.c2a() - I * gy * c.s2a()) * (c.ex(gd) / 2.0)
                + (jc * c.c2a() + js * c.s2a()) * (gd * c.ex(gd) / 2.0)
        }
        (2, 1) => {
            let e = c.ex(gd / 2.0);
            let (l41, l21) = (integral_f41(c)?, integral_f21(c)?);
            gamma_21(c)? * e * ca + I * gamma_41(c)? * e * sa + e * (ca * l21 + I * sa * l41)
        }

        // Row 1.
        (1, 9) => r(1, 9) * c.ex(ge),
        (1, 8) => (r(1, 8) * cb - I * r(1, 6) * sb) * c.ex((gd + ge) / 2.0),
        (1, 7) => {
            let (amb, apb) = (c.amb(), c.apb());
            gamma_17(c)? * c.ex(ge / 2.0) - r(3, 9) * c.ex(1.5 * ge)
                + (r(2, 8) * (c.sk_alpha(amb, gd)? + c.sk(apb, gd)?)
                    - I * r(2, 6) * pair!(c, ck, gd, -1.0)
                    - I * r(4, 8) * pair!(c, ck, gd, 1.0)
                    + r(4, 6) * (c.sk_alpha(amb, gd)? - c.sk(apb, gd)?))
                    * (gd * c.ex(gd + ge / 2.0) / 2.0)
        }
        (1, 6) => (r(1, 6) * cb - I * r(1, 8) * sb) * c.ex((gd + ge) / 2.0),
        (1, 5) => r(1, 5) * c.ex(gd),
        (1, 4) => {
            let (m12, m14) = (integral_f12(c)?, integral_f14(c)?);
            (gamma_14(c)? * ca - I * gamma_12(c)? * sa + ca * m14 - I * sa * m12) * c.ex(gd / 2.0)
        }
        (1, 3) => {
            let (amb, apb) = (c.amb(), c.apb());
            gamma_13(c)? * c.ex(ge / 2.0) - r(7, 9) * c.ex(1.5 * ge)
                + (r(4, 6) * pair!(c, sk, gd, 1.0)
                    - I * r(4, 8) * pair!(c, ck, gd, -1.0)
                    - I * r(2, 6) * pair!(c, ck, gd, -1.0)
                    + r(2, 8) * (c.sk_minus_den(amb, gd)? - c.sk(apb, gd)?))
                    * (gd / 2.0 * c.ex((2.0 * gd + ge) / 2.0))
        }
        (1, 2) => {
            let (m12, m14) = (integral_f12(c)?, integral_f14(c)?);
            (gamma_12(c)? * ca - I * gamma_14(c)? * sa + ca * m12 - I * sa * m14) * c.ex(gd / 2.0)
        }
        (1, 1) => {
            let trace: C64 = (1..=9).map(|k| r(k, k)).sum();
            trace - (r(2, 2) + r(4, 4) + r(5, 5) * 2.0 + r(8, 8) + r(6, 6)) * c.ex(gd)
                + r(5, 5) * c.ex(2.0 * gd)
                + (r(6, 6) + r(8, 8)) * c.ex(gd + ge)
                - (r(3, 3) + r(7, 7) + r(9, 9) * 2.0 + r(8, 8) + r(6, 6)) * c.ex(ge)
                + r(9, 9) * c.ex(2.0 * ge)
        }
        _ => unreachable!("element ({k}, {l}) out of range"),
    };
    Some(v)
}

// Constants and antiderivatives shared by the (7,4)/(7,2) pair.

fn integral_s74(c: &Ctx) -> Option<C64> {
    let (ge, gd) = (c.ge, c.gd);
    let twice = -c.r(8, 5) * (gd * c.ex(gd) * pair!(c, ck, gd, 1.0))
        + I * c.r(6, 5) * (gd * c.ex(gd) * pair!(c, sk, gd, -1.0))
        - c.r(9, 6) * (ge * c.ex(ge) * pair!(c, ck, ge, 1.0))
        - I * c.r(9, 8) * (ge * c.ex(ge) * pair!(c, sk, ge, -1.0));
    Some(twice * 0.5)
}

fn integral_c74(c: &Ctx) -> Option<C64> {
    let (ge, gd) = (c.ge, c.gd);
    let twice = c.r(8, 5) * (gd * c.ex(gd) * pair!(c, sk, gd, 1.0))
        + I * c.r(6, 5) * (gd * c.ex(gd) * pair!(c, ck, gd, -1.0))
        + c.r(9, 6) * (ge * c.ex(ge) * pair!(c, sk, ge, 1.0))
        - I * c.r(9, 8) * (ge * c.ex(ge) * pair!(c, ck, ge, -1.0));
    Some(twice * 0.5)
}

fn gamma_72(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    // The γe term is printed over (α±β)² + γd².
    Some(
        c.r(7, 2) - c.r(6, 5) * (0.5 * gd * (gd * c.d(apb, gd)? + gd * c.d(amb, gd)?))
            + c.r(9, 8) * (0.5 * ge * (ge * c.d(apb, gd)? + ge * c.d(amb, gd)?))
            + I * 0.5 * gd * c.r(8, 5) * (amb * c.d(amb, gd)? - apb * c.d(apb, gd)?)
            + I * 0.5 * ge * c.r(9, 6) * (amb * c.d(amb, ge)? - apb * c.d(apb, ge)?),
    )
}

fn gamma_74(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        c.r(7, 4)
            + c.r(8, 5) * (0.5 * gd * (gd * c.d(apb, gd)? + gd * c.d(amb, gd)?))
            + c.r(9, 6) * (0.5 * ge * (ge * c.d(apb, gd)? + ge * c.d(amb, gd)?))
            - I * 0.5 * gd * c.r(6, 5) * (amb * c.d(amb, gd)? + apb * c.d(apb, gd)?)
            + I * 0.5 * ge * c.r(9, 8) * (amb * c.d(amb, ge)? + apb * c.d(apb, ge)?),
    )
}

fn gamma_71(c: &Ctx) -> Option<C64> {
    let (gd, amb, apb) = (c.gd, c.amb(), c.apb());
    let inner = c.r(8, 2) * (gd * c.d(amb, gd)? + gd * c.d(apb, gd)?)
        - I * c.r(6, 2) * (amb * c.d(amb, gd)? - apb * c.d(apb, gd)?)
        - I * c.r(8, 4) * (amb * c.d(amb, gd)? + apb * c.d(apb, gd)?)
        + c.r(6, 4) * (gd * c.d(amb, gd)? - gd * c.d(apb, gd)?);
    Some(c.r(7, 1) + c.r(9, 3) + inner * (gd / 2.0))
}

// The (4,7)/(2,7) pair.

fn integral_s47(c: &Ctx) -> Option<C64> {
    let (ge, gd) = (c.ge, c.gd);
    let twice = -c.r(5, 8) * (gd * c.ex(gd) * pair!(c, ck, gd, 1.0))
        - I * c.r(5, 6) * (gd * c.ex(gd) * pair!(c, sk, gd, -1.0))
        - c.r(6, 9) * (ge * c.ex(ge) * pair!(c, ck, ge, 1.0))
        + I * c.r(8, 9) * (ge * c.ex(ge) * pair!(c, sk, ge, -1.0));
    Some(twice * 0.5)
}

fn integral_c47(c: &Ctx) -> Option<C64> {
    let (ge, gd) = (c.ge, c.gd);
    let twice = c.r(5, 8) * (gd * c.ex(gd) * pair!(c, sk, gd, 1.0))
        - I * c.r(5, 6) * (gd * c.ex(gd) * pair!(c, ck, gd, -1.0))
        + c.r(6, 9) * (ge * c.ex(ge) * pair!(c, sk, ge, 1.0))
        + I * c.r(8, 9) * (ge * c.ex(ge) * pair!(c, ck, ge, -1.0));
    Some(twice * 0.5)
}

fn gamma_27(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        c.r(2, 7) + c.r(5, 6) * (0.5 * gd * (gd * c.d(apb, gd)? - gd * c.d(amb, gd)?))
            - c.r(8, 9) * (0.5 * ge * (ge * c.d(apb, gd)? - ge * c.d(amb, gd)?))
            - I * 0.5 * gd * c.r(5, 8) * (amb * c.d(amb, gd)? + apb * c.d(apb, gd)?)
            - I * 0.5 * ge * c.r(6, 9) * (amb * c.d(amb, ge)? + apb * c.d(apb, ge)?),
    )
}

fn gamma_47(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        c.r(4, 7)
            + c.r(5, 8) * (0.5 * gd * (gd * c.d(apb, gd)? + gd * c.d(amb, gd)?))
            + c.r(6, 9) * (0.5 * ge * (ge * c.d(apb, gd)? + ge * c.d(amb, gd)?))
            + I * 0.5 * gd * c.r(5, 6) * (amb * c.d(amb, gd)? - apb * c.d(apb, gd)?)
            - I * 0.5 * ge * c.r(8, 9) * (amb * c.d(amb, ge)? - apb * c.d(apb, ge)?),
    )
}

// The (4,4)/(2,2)/(4,2)/(2,4) block.

/// `∫ e^{γd t}(ρ88(t) − ρ66(t)) sin 2αt dt`.
fn j_sin(c: &Ctx) -> Option<C64> {
    let (ge, amb, apb) = (c.ge, c.amb(), c.apb());
    let e = c.ex(ge);
    Some(
        (c.r(8, 8) - c.r(6, 6)) * (0.5 * e * (-c.ck2(amb, ge)? - c.ck2(apb, ge)?))
            + I * (c.r(6, 8) - c.r(8, 6)) * (0.5 * e * (c.sk2(amb, ge)? - c.sk2(apb, ge)?)),
    )
}

/// `∫ e^{γd t}(ρ88(t) − ρ66(t)) cos 2αt dt`.
fn j_cos(c: &Ctx) -> Option<C64> {
    let (ge, amb, apb) = (c.ge, c.amb(), c.apb());
    let e = c.ex(ge);
    Some(
        (c.r(8, 8) - c.r(6, 6)) * (0.5 * e * (c.sk2(amb, ge)? + c.sk2(apb, ge)?))
            + I * (c.r(6, 8) - c.r(8, 6)) * (0.5 * e * (c.ck2(amb, ge)? - c.ck2(apb, ge)?)),
    )
}

fn gamma_x(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        c.r(2, 2) - c.r(4, 4) + (c.r(8, 8) - c.r(6, 6)) * (gd / 2.0 * (ge * c.d4(apb, ge)? + ge * c.d4(amb, ge)?))
            - I * (c.r(6, 8) - c.r(8, 6)) * (gd / 2.0 * (2.0 * amb * c.d4(amb, ge)? - 2.0 * apb * c.d4(apb, ge)?)),
    )
}

fn gamma_y(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        c.r(2, 4) - c.r(4, 2)
            + I * (c.r(8, 8) - c.r(6, 6)) * (gd / 2.0 * (2.0 * amb * c.d4(amb, ge)? + 2.0 * apb * c.d4(apb, ge)?))
            - (c.r(6, 8) - c.r(8, 6)) * (gd / 2.0 * (ge * c.d4(amb, ge)? - ge * c.d4(apb, ge)?)),
    )
}

// The (4,3)/(2,3) pair.

fn integral_c23(c: &Ctx) -> Option<C64> {
    let (ge, gd) = (c.ge, c.gd);
    Some(
        c.r(5, 6) * (gd * c.ex(gd) / 2.0 * pair!(c, sk, gd, 1.0))
            - I * c.r(5, 8) * (gd * c.ex(gd) / 2.0 * pair!(c, ck, gd, -1.0))
            + c.r(8, 9) * (ge * c.ex(ge) / 2.0 * pair!(c, sk, ge, 1.0))
            + I * c.r(6, 9) * (ge * c.ex(ge) / 2.0 * pair!(c, ck, ge, -1.0)),
    )
}

fn integral_s23(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        -c.r(5, 6) * (gd * c.ex(gd) / 2.0 * pair!(c, ck, gd, 1.0))
            - I * c.r(5, 8) * (gd * c.ex(gd) / 2.0 * (c.sk(amb, gd)? - c.sk_plus(apb, gd)?))
            - c.r(8, 9) * (ge * c.ex(ge) / 2.0 * pair!(c, ck, ge, 1.0))
            + I * c.r(6, 9) * (ge * c.ex(ge) / 2.0 * (c.sk(amb, ge)? - c.sk_plus(apb, ge)?)),
    )
}

fn gamma_43(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        c.r(4, 3)
            - I * c.r(5, 6) * (gd / 2.0 * (amb * c.d(amb, gd)? + apb * c.d(apb, gd)?))
            - c.r(5, 8) * (gd * gd / 2.0 * (c.d(amb, gd)? + c.d(apb, gd)?))
            - I * c.r(8, 9) * (ge / 2.0 * (amb * c.d(amb, ge)? + apb * c.d(apb, ge)?))
            + c.r(6, 9) * (ge * ge / 2.0 * (c.d(amb, ge)? + c.d(apb, ge)?)),
    )
}

fn gamma_23(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        c.r(2, 3)
            + c.r(5, 6) * (gd * gd / 2.0 * (c.d(amb, gd)? + c.d(apb, gd)?))
            + I * c.r(5, 8) * (gd / 2.0 * (amb * c.d(amb, gd)? - apb * c.d(apb, gd)?))
            + c.r(8, 9) * (ge * ge / 2.0 * (c.d(amb, ge)? + c.d(apb, ge)?))
            - I * c.r(6, 9) * (ge / 2.0 * (amb * c.d(amb, ge)? + apb * c.d(apb, ge)?)),
    )
}

// The (4,1)/(2,1) pair.

/// `∫ e^{γd t/2}(F21 cos αt − i F41 sin αt) dt`.
fn integral_f21(c: &Ctx) -> Option<C64> {
    let (ge, gd, a) = (c.ge, c.gd, c.a);
    Some(
        (c.r(5, 4) * c.sk2(a, gd)? + I * c.r(5, 2) * c.ck2(a, gd)?) * (gd * c.ex(gd))
            + (c.r(8, 7) * pair!(c, sk, ge, 1.0)
                + I * c.r(6, 7) * pair!(c, ck, ge, -1.0)
                + I * c.r(6, 3) * pair!(c, ck, ge, 1.0)
                + c.r(8, 3) * pair!(c, sk, ge, -1.0))
                * (ge / 2.0 * c.ex(ge)),
    )
}

/// `∫ e^{γd t/2}(F41 cos αt − i F21 sin αt) dt`.
fn integral_f41(c: &Ctx) -> Option<C64> {
    let (ge, gd, a) = (c.ge, c.gd, c.a);
    Some(
        (c.r(5, 2) * c.sk2(a, gd)? + I * c.r(5, 4) * c.ck2(a, gd)?) * (gd * c.ex(gd))
            + (c.r(6, 3) * pair!(c, sk, ge, 1.0)
                + I * c.r(8, 3) * pair!(c, ck, ge, -1.0)
                + I * c.r(8, 7) * pair!(c, ck, ge, 1.0)
                + c.r(6, 7) * pair!(c, sk, ge, -1.0))
                * (ge / 2.0 * c.ex(ge)),
    )
}

fn gamma_41(c: &Ctx) -> Option<C64> {
    let (ge, gd, a, amb, apb) = (c.ge, c.gd, c.a, c.amb(), c.apb());
    Some(
        c.r(4, 1)
            + (gd * c.r(5, 2) - 2.0 * a * I * c.r(5, 4)) * (gd * c.d4(a, gd)?)
            + c.r(6, 3) * (ge / 2.0 * (ge * c.d(amb, ge)? + ge * c.d(apb, ge)?))
            - I * c.r(8, 3) * (ge / 2.0 * (amb * c.d(amb, ge)? - apb * c.d(apb, ge)?))
            - I * c.r(8, 7) * (ge / 2.0 * (amb * c.d(amb, ge)? + apb * c.d(apb, ge)?))
            + c.r(6, 7) * (ge / 2.0 * (ge * c.d(amb, ge)? - ge * c.d(apb, ge)?)),
    )
}

fn gamma_21(c: &Ctx) -> Option<C64> {
    let (ge, gd, a, amb, apb) = (c.ge, c.gd, c.a, c.amb(), c.apb());
    Some(
        c.r(2, 1)
            + (gd * c.r(5, 4) - 2.0 * a * I * c.r(5, 2)) * (gd * c.d4(a, gd)?)
            + c.r(8, 7) * (ge / 2.0 * (ge * c.d(amb, ge)? + ge * c.d(apb, ge)?))
            - I * c.r(6, 7) * (ge / 2.0 * (amb * c.d(amb, ge)? - apb * c.d(apb, ge)?))
            - I * c.r(6, 3) * (ge / 2.0 * (amb * c.d(amb, ge)? + apb * c.d(apb, ge)?))
            + c.r(8, 3) * (ge / 2.0 * (ge * c.d(amb, ge)? - ge * c.d(apb, ge)?)),
    )
}

// The (3,4)/(3,2) pair.

fn integral_s32(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        -c.r(6, 5) * (gd * c.ex(gd) / 2.0 * pair!(c, ck, gd, 1.0))
            + I * c.r(8, 5) * (gd * c.ex(gd) / 2.0 * (c.sk(amb, gd)? - c.sk_plus(apb, gd)?))
            - c.r(9, 8) * (ge * c.ex(ge) / 2.0 * pair!(c, ck, ge, 1.0))
            - I * c.r(9, 6) * (ge * c.ex(ge) / 2.0 * (c.sk(amb, ge)? - c.sk_plus(apb, ge)?)),
    )
}

fn integral_c32(c: &Ctx) -> Option<C64> {
    let (ge, gd) = (c.ge, c.gd);
    Some(
        c.r(6, 5) * (gd * c.ex(gd) / 2.0 * pair!(c, sk, gd, 1.0))
            + I * c.r(8, 5) * (gd * c.ex(gd) / 2.0 * pair!(c, ck, gd, -1.0))
            + c.r(9, 8) * (ge * c.ex(ge) / 2.0 * pair!(c, sk, ge, 1.0))
            + I * c.r(9, 6) * (ge * c.ex(ge) / 2.0 * pair!(c, ck, ge, -1.0)),
    )
}

fn gamma_34(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        c.r(3, 4) + I * c.r(6, 5) * (gd / 2.0 * (amb * c.d(amb, gd)? + apb * c.d(apb, gd)?))
            - c.r(8, 5) * (gd / 2.0 * (gd * c.d(amb, gd)? + gd * c.d(apb, gd)?))
            + I * c.r(9, 8) * (ge / 2.0 * (amb * c.d(amb, ge)? + apb * c.d(apb, ge)?))
            + c.r(9, 6) * (ge / 2.0 * (ge * c.d(amb, ge)? + ge * c.d(apb, ge)?)),
    )
}

fn gamma_32(c: &Ctx) -> Option<C64> {
    let (ge, gd, amb, apb) = (c.ge, c.gd, c.amb(), c.apb());
    Some(
        c.r(3, 2) + c.r(6, 5) * (gd / 2.0 * (gd * c.d(amb, gd)? + gd * c.d(apb, gd)?))
            - I * c.r(8, 5) * (gd / 2.0 * (amb * c.d(amb, gd)? - apb * c.d(apb, gd)?))
            + c.r(9, 8) * (ge / 2.0 * (ge * c.d(amb, ge)? + ge * c.d(apb, ge)?))
            - I * c.r(9, 6) * (ge / 2.0 * (amb * c.d(amb, ge)? - apb * c.d(apb, ge)?)),
    )
}

fn gamma_31(c: &Ctx) -> Option<C64> {
    let (gd, amb, apb) = (c.gd, c.amb(), c.apb());
    Some(
        c.r(3, 1) + (c.r(6, 4) + c.r(8, 2)) * (gd * gd / 2.0 * (c.d(amb, gd)? + c.d(apb, gd)?))
            - I * (c.r(8, 4) + c.r(6, 2)) * (gd / 2.0 * amb * c.d(amb, gd)?)
            + I * (c.r(8, 4) - c.r(6, 2)) * (gd / 2.0 * apb * c.d(apb, gd)?),
    )
}

// Row 1.

fn gamma_17(c: &Ctx) -> Option<C64> {
    let (gd, amb, apb) = (c.gd, c.amb(), c.apb());
    Some(
        c.r(1, 7)
            + (c.r(4, 6) + c.r(2, 8)) * (gd * gd / 2.0 * (c.d(amb, gd)? + c.d(apb, gd)?))
            + I * (c.r(4, 8) + c.r(2, 6)) * (gd / 2.0 * amb * c.d(amb, gd)?)
            + I * (c.r(4, 8) - c.r(2, 6)) * (gd / 2.0 * apb * c.d(apb, gd)?),
    )
}

/// `∫ e^{γd t/2}(F12 cos αt + i F14 sin αt) dt`.
fn integral_f12(c: &Ctx) -> Option<C64> {
    let (ge, gd, a) = (c.ge, c.gd, c.a);
    Some(
        (c.r(4, 5) * c.sk2(a, gd)? - I * c.r(2, 5) * c.ck2(a, gd)?) * (gd * c.ex(gd))
            + (c.r(7, 8) * pair!(c, sk, ge, 1.0)
                - I * c.r(7, 6) * pair!(c, ck, ge, -1.0)
                - I * c.r(3, 6) * pair!(c, ck, ge, 1.0)
                + c.r(3, 8) * pair!(c, sk, ge, -1.0))
                * (ge / 2.0 * c.ex(ge)),
    )
}

/// `∫ e^{γd t/2}(F14 cos αt + i F12 sin αt) dt`.
fn integral_f14(c: &Ctx) -> Option<C64> {
    let (ge, gd, a) = (c.ge, c.gd, c.a);
    Some(
        (c.r(2, 5) * c.sk2(a, gd)? - I * c.r(4, 5) * c.ck2(a, gd)?) * (gd * c.ex(gd))
            + (c.r(3, 6) * pair!(c, sk, ge, 1.0)
                - I * c.r(3, 8) * pair!(c, ck, ge, -1.0)
                - I * c.r(7, 8) * pair!(c, ck, ge, 1.0)
                + c.r(7, 6) * pair!(c, sk, ge, -1.0))
                * (ge / 2.0 * c.ex(ge)),
    )
}

fn gamma_12(c: &Ctx) -> Option<C64> {
    let (ge, gd, a, amb, apb) = (c.ge, c.gd, c.a, c.amb(), c.apb());
    // The ρ36 term is printed with a doubled "− +" sign; read as minus.
    Some(
        c.r(1, 2)
            + (gd * c.r(4, 5) + 2.0 * a * I * c.r(2, 5)) * (gd * c.d4(a, gd)?)
            + c.r(7, 8) * (ge / 2.0 * (ge * c.d(amb, ge)? + ge * c.d(apb, ge)?))
            + I * c.r(7, 6) * (ge / 2.0 * (amb * c.d(amb, ge)? - apb * c.d(apb, ge)?))
            - I * c.r(3, 6) * (ge / 2.0 * (amb * c.d(amb, ge)? + apb * c.d(apb, ge)?))
            + c.r(3, 8) * (ge / 2.0 * (ge * c.d(amb, ge)? - ge * c.d(apb, ge)?)),
    )
}

fn gamma_14(c: &Ctx) -> Option<C64> {
    let (ge, gd, a, amb, apb) = (c.ge, c.gd, c.a, c.amb(), c.apb());
    Some(
        c.r(1, 4)
            + (gd * c.r(2, 5) + 2.0 * a * I * c.r(4, 5)) * (gd * c.d4(a, gd)?)
            + c.r(3, 6) * (ge / 2.0 * (ge * c.d(amb, ge)? + ge * c.d(apb, ge)?))
            + I * c.r(3, 8) * (ge / 2.0 * (amb * c.d(amb, ge)? - apb * c.d(apb, ge)?))
            + I * c.r(7, 8) * (ge / 2.0 * (amb * c.d(amb, ge)? + apb * c.d(apb, ge)?))
            + c.r(7, 6) * (ge / 2.0 * (ge * c.d(amb, ge)? - ge * c.d(apb, ge)?)),
    )
}

fn gamma_13(c: &Ctx) -> Option<C64> {
    let (gd, amb, apb) = (c.gd, c.amb(), c.apb());
    Some(
        c.r(1, 3)
            + c.r(7, 9)
            + c.r(4, 6) * (gd / 2.0 * (gd * c.d(amb, gd)? + gd * c.d(apb, gd)?))
            + I * c.r(4, 8) * (gd / 2.0 * (amb * c.d(amb, gd)? - apb * c.d(apb, gd)?))
            + I * c.r(2, 6) * (gd / 2.0 * (amb * c.d(amb, gd)? + apb * c.d(apb, gd)?))
            + c.r(2, 8) * (gd / 2.0 * (gd * c.d(amb, gd)? - gd * c.d(apb, gd)?)),
    )
}
