//! Complex gamma function and single-valued branches of the multivalued
//! powers that appear in the kernel factorization.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Which half-plane a multivalued factor must be analytic in.
///
/// `Upper` puts the branch cut below the branch point, `Lower` above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    Upper,
    Lower,
}

impl HalfPlane {
    pub fn sign(self) -> f64 {
        match self {
            HalfPlane::Upper => 1.0,
            HalfPlane::Lower => -1.0,
        }
    }
}

/// Base of a branch power, `ξ + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaseShift {
    XiPlusI,
    XiMinusI,
    /// `ξ + a` for the given `a`.
    XiPlusA(f64),
    /// `ξ − a` for the given `a`.
    XiMinusA(f64),
    XiBare,
}

impl BaseShift {
    fn apply(self, xi: Complex64) -> Complex64 {
        match self {
            BaseShift::XiPlusI => xi + Complex64::i(),
            BaseShift::XiMinusI => xi - Complex64::i(),
            BaseShift::XiPlusA(a) => xi + a,
            BaseShift::XiMinusA(a) => xi - a,
            BaseShift::XiBare => xi,
        }
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(z) for complex z.
pub fn cgamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::PoleAtNonPositiveInteger(z.re));
    }
    Ok(gamma_unchecked(z))
}

pub(crate) fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = (Complex64::from(PI) * z).sin();
        return Complex64::from(PI) / (s * gamma_unchecked(1.0 - z));
    }
    (lngamma_right(z)).exp()
}

/// log Γ(z) for Re z ≥ 0.5, continuous in z on that half-plane.
fn lngamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::from(LANCZOS[0]);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Logarithm with the cut pointing away from `hp`: arg in [−π/2, 3π/2) for
/// `Upper` and (−3π/2, π/2] for `Lower`.
pub fn log_branch(w: Complex64, hp: HalfPlane) -> Complex64 {
    let mut th = w.im.atan2(w.re);
    match hp {
        HalfPlane::Upper => {
            if th < -PI / 2.0 {
                th += 2.0 * PI;
            }
        }
        HalfPlane::Lower => {
            if th > PI / 2.0 {
                th -= 2.0 * PI;
            }
        }
    }
    Complex64::new(w.norm().ln(), th)
}

pub(crate) fn pow_branch(w: Complex64, alpha: Complex64, hp: HalfPlane) -> Complex64 {
    (alpha * log_branch(w, hp)).exp()
}

/// `(ξ + shift)^α` on the branch analytic in `half_plane`.
///
/// The cut runs vertically from the branch point into the opposite
/// half-plane, so `(ξ+i)^α` and `(ξ+a)^α` belong with `Upper` and
/// `(ξ−i)^α`, `(ξ−a)^α` with `Lower`. Real points keep the limit from the
/// designated side.
pub fn branch_pow(
    shift: BaseShift,
    xi: Complex64,
    alpha: Complex64,
    half_plane: HalfPlane,
) -> Result<Complex64> {
    let w = shift.apply(xi);
    let on_cut = w.re == 0.0
        && match half_plane {
            HalfPlane::Upper => w.im <= 0.0,
            HalfPlane::Lower => w.im >= 0.0,
        };
    if on_cut {
        return Err(Error::OnBranchCut { re: xi.re, im: xi.im });
    }
    Ok(pow_branch(w, alpha, half_plane))
}
