//! Coupling between near-front fields and SIFs, the SIF transform formula,
//! first-order wavy-front perturbation, and near-tip fields.

use crate::bimaterial::BimaterialConstants;
use crate::error::{Error, Result};
use crate::special_functions::gamma_unchecked;
use crate::wiener_hopf::CMat3;
use num_complex::Complex64;
use std::f64::consts::PI;

pub mod kernel;
pub mod near_tip;
pub mod spectral;

pub use kernel::{h33_single_integral, ll_weight_kernel, point_force_sif, sif_from_load, KernelSettings, SifSettings, WeightJumps, WeightKernel};
pub use near_tip::{fourier_constants, near_tip_fields, FourierConstants, NearTipCoefficients, NearTipFields};
pub use spectral::{perturb_front, perturb_spectral, FrontBaseline, FrontPerturbation, SpectralPerturbation};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy)]
pub struct CouplingMatrices {
    pub ds: f64,
    pub es: f64,
    pub a: f64,
    pub epsilon: f64,
    pub c1: Complex64,
    pub c2: Complex64,
    pub big_d: Complex64,
}

pub fn coupling_matrices(c: &BimaterialConstants) -> Result<CouplingMatrices> {
    let (Some(a), Some(big_d)) = (c.a, c.big_d) else {
        return Err(Error::DegenerateBimaterial(c.d_star));
    };
    let eps = c.epsilon;
    let sp = PI.sqrt();
    Ok(CouplingMatrices {
        ds: c.d_star,
        es: c.e_star,
        a,
        epsilon: eps,
        c1: Complex64::new(1.0, 1.0) * sp / (2.0 * gamma_unchecked(Complex64::new(0.5, eps))),
        c2: Complex64::new(1.0, 1.0) * sp / (2.0 * gamma_unchecked(Complex64::new(0.5, -eps))),
        big_d,
    })
}

impl CouplingMatrices {
    fn lam_ie(&self, l: f64) -> Complex64 {
        Complex64::new(0.0, self.epsilon * l.ln()).exp()
    }

    /// 𝒜(λ) = √|λ|/(4√2)·{a_jk(λ)}.
    pub fn a_mat(&self, lambda: f64) -> CMat3 {
        let (ds, es, a) = (self.ds, self.es, self.a);
        let s = lambda.signum();
        let l = lambda.abs();
        let li = self.lam_ie(l);
        let (c1, c2, d) = (self.c1, self.c2, self.big_d);
        let q = (1.0 - I * a).sqrt();
        let one_i = Complex64::new(1.0, 1.0);
        let one_mi = Complex64::new(1.0, -1.0);
        let sq2 = 2f64.sqrt();
        let m = CMat3::new(
            -s * 2.0 * ds * q / c1 * d / li,
            -s * 2.0 * ds * q / c2 * li / d,
            2.0 * sq2 * one_i,
            ds * q / c1 * d / li,
            -ds * q / c2 * li / d,
            -s * sq2 * one_i * (1.0 + es) / ((I - a) * a * ds * ds),
            2.0 * (1.0 - I * a) * ds.powf(1.5) / (one_i * c1 * (1.0 - a * ds).sqrt()) * d / li,
            2.0 * (1.0 - I * a) * ds.sqrt() * (1.0 - a * ds).sqrt() / (one_mi * c2) * li / d,
            Complex64::new(0.0, 0.0),
        );
        m * Complex64::from(l.sqrt() / (4.0 * sq2))
    }

    /// 𝓑̃(λ) = 𝒜(λ)⁻¹, assembled from its own closed form.
    pub fn b_tilde(&self, lambda: f64) -> CMat3 {
        let (ds, es, a) = (self.ds, self.es, self.a);
        let s = lambda.signum();
        let l = lambda.abs();
        let li = self.lam_ie(l);
        let sl = l.sqrt();
        let (c1, c2, d) = (self.c1, self.c2, self.big_d);
        let q = (1.0 - I * a).sqrt();
        let one_i = Complex64::new(1.0, 1.0);
        let sq2 = 2f64.sqrt();
        let mia = a - I;
        let u = li / (d * sl);
        let v = d / (li * sl);
        let m = CMat3::new(
            -s * c1 * (-1.0 + mia * ds) * (1.0 + es) / (mia * ds * ds) * u,
            2.0 * c1 * (-1.0 + mia * ds) * a * u,
            2.0 * I * c1 * ((1.0 + I * a) * ds * ds + es) * u,
            -s * c2 * (1.0 + mia * ds) * (1.0 + es) / (mia * ds * ds) * v,
            2.0 * c2 * (1.0 + mia * ds) * a * v,
            2.0 * I * c2 * ((1.0 + I * a) * ds * ds - 2.0 - es) * v,
            -Complex64::new(1.0, -1.0) / sq2 * a * ds * q / sl,
            -sq2 * s * one_i * (1.0 + I * a) * a * ds * ds * q / sl,
            -sq2 * s * one_i * mia * a * ds.powi(3) * q / sl,
        );
        m * (sq2 / (q * (1.0 - a * ds + es)))
    }

    /// Physical-space kernel 𝓑(x₃), the inverse transform of 𝓑̃ in λ.
    pub fn b_phys(&self, x3: f64) -> CMat3 {
        let (ds, es, a, eps) = (self.ds, self.es, self.a, self.epsilon);
        let s = x3.signum();
        let l = x3.abs();
        let li = self.lam_ie(l);
        let sl = l.sqrt();
        let (c1, c2, d) = (self.c1, self.c2, self.big_d);
        let q = (1.0 - I * a).sqrt();
        let one_i = Complex64::new(1.0, 1.0);
        let mia = a - I;
        let g_p = gamma_unchecked(Complex64::new(0.5, eps));
        let g_m = gamma_unchecked(Complex64::new(0.5, -eps));
        let cosc = |re: f64, im: f64| (Complex64::new(re, im) * (PI / 4.0)).cos();
        let u = 1.0 / (d * li * sl);
        let v = d * li / sl;
        let sp = PI.sqrt();
        let m = CMat3::new(
            -I / PI * s * c1 * (-1.0 + mia * ds) * (1.0 + es) / (mia * ds * ds) * cosc(3.0, 2.0 * eps) * g_p * u,
            2.0 / PI * c1 * (-1.0 + mia * ds) * a * cosc(1.0, 2.0 * eps) * g_p * u,
            2.0 * I / PI * c1 * ((1.0 + I * a) * ds * ds + es) * cosc(1.0, 2.0 * eps) * g_p * u,
            -I / PI * s * c2 * (1.0 + mia * ds) * (1.0 + es) / (mia * ds * ds) * cosc(3.0, -2.0 * eps) * g_m * v,
            2.0 / PI * c2 * (1.0 + mia * ds) * a * cosc(1.0, -2.0 * eps) * g_m * v,
            2.0 * I / PI * c2 * ((1.0 + I * a) * ds * ds - 2.0 - es) * cosc(1.0, -2.0 * eps) * g_m * v,
            -Complex64::new(1.0, -1.0) / (2.0 * sp) * a * ds * q / sl,
            I / sp * s * one_i * (1.0 + I * a) * a * ds * ds * q / sl,
            I / sp * s * one_i * mia * a * ds.powi(3) * q / sl,
        );
        m * (2f64.sqrt() / (q * (1.0 - a * ds + es)))
    }
}
