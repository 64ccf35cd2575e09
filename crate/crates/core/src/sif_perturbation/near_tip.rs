//! Two-term near-tip asymptotics of the interface tractions ahead of the
//! front and the displacement jumps behind it.

use super::I;
use crate::bimaterial::BimaterialConstants;
use crate::error::{Error, Result};
use crate::special_functions::gamma_unchecked;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// K, K_III and the load-dependent second-order amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct NearTipCoefficients {
    pub k: Complex64,
    pub k_iii: f64,
    pub a_coef: Complex64,
    pub a_iii: f64,
    pub b_coef: Complex64,
    pub b_iii: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum NearTipFields {
    /// (σ₁₂, σ₂₂, σ₃₂) on the interface, x₁ > 0.
    Tractions([f64; 3]),
    /// ([u₁], [u₂], [u₃]) across the crack, x₁ < 0.
    Jumps([f64; 3]),
}

fn pow_x(x: f64, re: f64, im: f64) -> Complex64 {
    (Complex64::new(re, im) * x.ln()).exp()
}

pub fn near_tip_fields(coef: &NearTipCoefficients, x1: f64, c: &BimaterialConstants) -> Result<NearTipFields> {
    if x1 == 0.0 || !x1.is_finite() {
        return Err(Error::InvalidArgument(format!("x1 = {x1}")));
    }
    let eps = c.epsilon;
    let s2p = (2.0 * PI).sqrt();
    let (k, a, b) = (coef.k, coef.a_coef, coef.b_coef);
    if x1 > 0.0 {
        let z = k * pow_x(x1, -0.5, eps) + a * pow_x(x1, 0.5, eps);
        // −i(z − z*) = 2 Im z, z + z* = 2 Re z
        let s12 = z.im / s2p;
        let s22 = z.re / s2p;
        let s32 = (coef.k_iii * x1.powf(-0.5) + coef.a_iii * x1.sqrt()) / s2p;
        Ok(NearTipFields::Tractions([s12, s22, s32]))
    } else {
        let r = -x1;
        let z = k / Complex64::new(1.0, 2.0 * eps) * pow_x(r, 0.5, eps) + b * pow_x(r, 1.5, eps);
        let pre = c.b / (s2p * (PI * eps).cosh());
        let u1 = (-I * pre * (z - z.conj())).re;
        let u2 = pre * 2.0 * z.re;
        let u3 = 2.0 * (c.b + c.e) / s2p * (coef.k_iii * r.sqrt() + coef.b_iii * r.powf(1.5));
        Ok(NearTipFields::Jumps([u1, u2, u3]))
    }
}

/// Constants in the transforms of the near-tip expansions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierConstants {
    pub c1: Complex64,
    pub c2: Complex64,
    pub g1: Complex64,
    pub g2: Complex64,
    pub e0: f64,
    pub v1: Complex64,
    pub v2: Complex64,
    pub w1: Complex64,
    pub w2: Complex64,
}

pub fn fourier_constants(c: &BimaterialConstants) -> FourierConstants {
    let eps = c.epsilon;
    let sp = PI.sqrt();
    let g = |re: f64, im: f64| gamma_unchecked(Complex64::new(re, im));
    let c1 = Complex64::new(1.0, 1.0) * sp / (2.0 * g(0.5, eps));
    let c2 = Complex64::new(1.0, 1.0) * sp / (2.0 * g(0.5, -eps));
    let g1 = Complex64::new(1.0, -1.0) * sp / (2.0 * g(1.5, eps));
    let g2 = Complex64::new(1.0, -1.0) * sp / (2.0 * g(1.5, -eps));
    let bd = I * c.b * c.d0 * c.d0;
    FourierConstants {
        c1,
        c2,
        g1,
        g2,
        e0: (PI * eps / 2.0).exp(),
        v1: -bd / (4.0 * c1),
        v2: -bd / (4.0 * c2),
        w1: bd * g(3.0, 2.0 * eps) / (4.0 * g1),
        w2: bd * g(3.0, -2.0 * eps) / (4.0 * g2),
    }
}
