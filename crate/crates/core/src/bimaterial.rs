//! Material input validation and the derived scalar constants.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

/// Below this value of d* the pair is treated as d* = 0.
pub const DEGENERATE_DSTAR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaterialPair {
    pub nu_plus: f64,
    pub mu_plus: f64,
    pub nu_minus: f64,
    pub mu_minus: f64,
    /// Set when the two half-spaces were exchanged so that d > 0.
    pub swapped: bool,
}

impl MaterialPair {
    pub fn new(nu_plus: f64, mu_plus: f64, nu_minus: f64, mu_minus: f64) -> Result<Self> {
        let p = MaterialPair { nu_plus, mu_plus, nu_minus, mu_minus, swapped: false };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, nu) in [("nu_plus", self.nu_plus), ("nu_minus", self.nu_minus)] {
            if !(0.0..=0.5).contains(&nu) {
                return Err(Error::InvalidMaterial(format!("{name} = {nu} outside [0, 0.5]")));
            }
        }
        for (name, mu) in [("mu_plus", self.mu_plus), ("mu_minus", self.mu_minus)] {
            if !(mu > 0.0 && mu.is_finite()) {
                return Err(Error::InvalidMaterial(format!("{name} = {mu} must be positive")));
            }
        }
        Ok(())
    }

    /// The same pair with upper and lower half-spaces exchanged.
    pub fn swap(&self) -> Self {
        MaterialPair {
            nu_plus: self.nu_minus,
            mu_plus: self.mu_minus,
            nu_minus: self.nu_plus,
            mu_minus: self.mu_plus,
            swapped: !self.swapped,
        }
    }

    /// (b, d, e) without any reorientation.
    pub fn raw_bde(&self) -> (f64, f64, f64) {
        let (np, mp, nm, mm) = (self.nu_plus, self.mu_plus, self.nu_minus, self.mu_minus);
        let b = (1.0 - np) / mp + (1.0 - nm) / mm;
        let d = (1.0 - 2.0 * np) / (2.0 * mp) - (1.0 - 2.0 * nm) / (2.0 * mm);
        let e = np / mp + nm / mm;
        (b, d, e)
    }

    /// ε straight from the moduli and Poisson ratios.
    pub fn epsilon_from_moduli(&self) -> f64 {
        let (np, mp, nm, mm) = (self.nu_plus, self.mu_plus, self.nu_minus, self.mu_minus);
        ((mp + (3.0 - 4.0 * np) * mm) / (mm + (3.0 - 4.0 * nm) * mp)).ln() / (2.0 * PI)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BimaterialConstants {
    /// The pair in normalized orientation (d ≥ 0).
    pub pair: MaterialPair,
    pub b: f64,
    pub d: f64,
    pub e: f64,
    pub epsilon: f64,
    /// ε from the moduli formula, kept for the cross-check.
    pub epsilon_moduli: f64,
    pub d_star: f64,
    pub e_star: f64,
    pub d0: f64,
    pub d1: f64,
    pub e0: f64,
    pub nu_composite: f64,
    pub eta: f64,
    /// `a`, M₋, D and B₀ diverge as d* → 0; `None` for degenerate pairs.
    pub a: Option<f64>,
    #[serde(skip)]
    pub m_minus: Option<Complex64>,
    #[serde(skip)]
    pub big_d: Option<Complex64>,
    #[serde(skip)]
    pub b0: Option<Complex64>,
}

pub fn derive_constants(pair: &MaterialPair) -> Result<BimaterialConstants> {
    pair.validate()?;
    let mut pair = *pair;
    let (_, d_raw, _) = pair.raw_bde();
    if d_raw < 0.0 {
        pair = pair.swap();
    }
    let (b, d, e) = pair.raw_bde();
    let d = d.max(0.0);
    let epsilon = (2.0 * d / (b - d)).ln_1p() / (2.0 * PI);
    let epsilon_moduli = pair.epsilon_from_moduli();
    if (epsilon - epsilon_moduli).abs() > 1e-10 {
        return Err(Error::InvalidMaterial(format!(
            "epsilon mismatch {epsilon} vs {epsilon_moduli}"
        )));
    }
    let d_star = d / b;
    let e_star = e / b;
    let d0 = (1.0 - d_star * d_star).powf(0.25);
    let d1 = ((1.0 + d_star) / (1.0 - d_star)).ln();
    let e0 = (PI * epsilon / 2.0).exp();
    let nu_composite = (d * d + b * e) / (b * (b + e));
    let eta = (pair.mu_plus - pair.mu_minus) / (pair.mu_plus + pair.mu_minus);

    let (a, m_minus, big_d, b0) = if d_star < DEGENERATE_DSTAR {
        (None, None, None, None)
    } else {
        let a = -(1.0 - d_star * d_star).sqrt() / d_star;
        let i = Complex64::i();
        let m = ((1.0 - i * a) / 2.0).sqrt() / d0;
        let ratio = (1.0 - a * d_star) / d_star;
        let two_ie = Complex64::new(0.0, epsilon * 2f64.ln()).exp();
        let big_d = two_ie * (2f64.sqrt() / 2.0) * Complex64::new(1.0, 1.0) * ratio.sqrt();
        let b0 = Complex64::new(PI / 4.0, -0.5 * ratio.ln());
        (Some(a), Some(m), Some(big_d), Some(b0))
    };

    Ok(BimaterialConstants {
        pair,
        b,
        d,
        e,
        epsilon,
        epsilon_moduli,
        d_star,
        e_star,
        d0,
        d1,
        e0,
        nu_composite,
        eta,
        a,
        m_minus,
        big_d,
        b0,
    })
}

impl BimaterialConstants {
    pub fn is_degenerate(&self) -> bool {
        self.a.is_none()
    }

    /// δ*(ξ) = d*²(ξ²+1) − 1.
    pub fn delta_star(&self, xi: Complex64) -> Complex64 {
        self.d_star * self.d_star * (xi * xi + 1.0) - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_materials() {
        let c = derive_constants(&MaterialPair::new(0.3, 1.0, 0.3, 1.0).unwrap()).unwrap();
        assert!((c.b - 1.4).abs() < 1e-15);
        assert_eq!(c.d, 0.0);
        assert!((c.e - 0.6).abs() < 1e-15);
        assert_eq!(c.epsilon, 0.0);
        assert_eq!(c.eta, 0.0);
        assert!(c.is_degenerate());
        assert!(!c.pair.swapped);
    }

    #[test]
    fn stiffer_upper_material_is_swapped() {
        let c = derive_constants(&MaterialPair::new(0.3, 2.0, 0.3, 1.0).unwrap()).unwrap();
        assert!(c.pair.swapped);
        assert!((c.b - 1.05).abs() < 1e-14);
        assert!((c.d - 0.1).abs() < 1e-14);
        assert!((c.e - 0.45).abs() < 1e-14);
        let want = (1.15f64 / 0.95).ln() / (2.0 * PI);
        assert!((c.epsilon - want).abs() < 1e-14);
        assert!((c.epsilon - 0.030406).abs() < 5e-6);
    }

    #[test]
    fn a_is_a_zero_of_delta() {
        let c = derive_constants(&MaterialPair::new(0.0, 1.0, 0.5, 1.0).unwrap()).unwrap();
        let a = c.a.unwrap();
        assert!(a < 0.0);
        assert!(c.delta_star(Complex64::from(a)).norm() < 1e-12);
        assert!(c.delta_star(Complex64::from(-a)).norm() < 1e-12);
    }

    #[test]
    fn d1_is_two_pi_epsilon() {
        let c = derive_constants(&MaterialPair::new(0.2, 3.0, 0.4, 1.0).unwrap()).unwrap();
        assert!((c.d1 - 2.0 * PI * c.epsilon).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(MaterialPair::new(0.6, 1.0, 0.3, 1.0).is_err());
        assert!(MaterialPair::new(0.3, 0.0, 0.3, 1.0).is_err());
        assert!(MaterialPair::new(0.3, 1.0, -0.1, 1.0).is_err());
        assert!(MaterialPair::new(0.3, 1.0, 0.3, f64::NAN).is_err());
    }
}
