//! First-order SIF variation for a coplanar wavy front x₁ = δφ(x₃).

use super::I;
use crate::bimaterial::BimaterialConstants;
use crate::error::{Error, Result};
use crate::ll_constants::LLConstants;
use crate::special_functions::cgamma;
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Uniform SIFs of the straight front and their uniform-advance derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontBaseline {
    /// K_I + iK_II.
    pub k: Complex64,
    pub k_iii: f64,
    pub dk_da: Complex64,
    pub dkiii_da: f64,
    /// Amplitude of the front displacement; the front sits at x₁ = delta·φ(x₃).
    pub delta: f64,
}

impl Default for FrontBaseline {
    fn default() -> Self {
        FrontBaseline { k: Complex64::from(1.0), k_iii: 0.0, dk_da: 0.0.into(), dkiii_da: 0.0, delta: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPerturbation {
    pub lambda_grid: Vec<f64>,
    /// φ̃(λ) on `lambda_grid`; scaled by `baseline.delta` on use.
    pub delta_phi_hat: Vec<Complex64>,
    pub baseline: FrontBaseline,
}

/// λ-independent factors of the two spectral formulas.
#[derive(Debug, Clone, Copy)]
struct Multipliers {
    eps: f64,
    /// Coefficient of K*|λ|^{1+2iε}.
    plus: Complex64,
    /// Coefficient of K|λ|.
    minus: Complex64,
    /// Coefficient of K_III sign λ |λ|^{1+iε}.
    iii: Complex64,
    /// πγ/4.
    anti: f64,
    /// (1−ν)/2 · cosh(πε/2)/ε · γ_z Γ(1−iε)/(1+iε), multiplying K*|λ|^{1+iε}.
    z: Complex64,
}

impl Multipliers {
    fn new(k: &LLConstants, c: &BimaterialConstants) -> Result<Self> {
        let eps = c.epsilon;
        let nu = c.nu_composite;
        let one_2ie = Complex64::new(1.0, 2.0 * eps);
        let one_ie = Complex64::new(1.0, eps);
        let g1 = cgamma(Complex64::new(1.0, -2.0 * eps))?;
        let g2 = cgamma(Complex64::new(1.0, -eps))?;
        let pre = one_2ie / (8.0 * (PI * eps).cosh());
        let sinh_ratio = if eps == 0.0 { PI } else { (PI * eps).sinh() / eps };
        let ch = (PI * eps / 2.0).cosh();
        // γ_III/ε and γ_z/ε, continued to ε = 0
        let (g3_eps, gz_eps) = if eps == 0.0 {
            let q = 2.0 * c.b + c.e;
            (Complex64::from(-4.0 * c.b / q), Complex64::from(4.0 * (c.b + c.e) / q))
        } else {
            (k.gamma_iii / eps, k.gamma_z / eps)
        };
        Ok(Multipliers {
            eps,
            plus: pre * k.gamma_plus * sinh_ratio * g1 / one_2ie,
            minus: pre * PI * k.gamma_minus,
            iii: -pre * 4.0 / (1.0 - nu) * ch * g3_eps * g2 / one_ie,
            anti: PI * k.gamma / 4.0,
            z: (1.0 - nu) / 2.0 * ch * gz_eps * g2 / one_ie,
        })
    }

    /// (ΔK̃, ΔK̃_III) per unit δφ̃ at λ, excluding the uniform-advance terms.
    /// `sign` is passed separately so the Nyquist bin can use 0.
    fn at(&self, b: &FrontBaseline, l: f64, sign: f64) -> (Complex64, Complex64) {
        if l == 0.0 {
            return (0.0.into(), 0.0.into());
        }
        let li = Complex64::new(0.0, self.eps * l.ln()).exp();
        let kc = b.k.conj();
        let bracket = self.plus * kc * l * li * li + self.minus * b.k * l + self.iii * b.k_iii * sign * l * li;
        let im = (self.z * kc * l * li).im;
        let anti = Complex64::from(self.anti * b.k_iii * l) - I * sign * im;
        (-bracket, -anti)
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// ΔK̃(λ) and ΔK̃_III(λ) termwise on the input grid.
pub fn perturb_spectral(
    input: &SpectralPerturbation,
    k: &LLConstants,
    c: &BimaterialConstants,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    if input.lambda_grid.len() != input.delta_phi_hat.len() {
        return Err(Error::InvalidArgument("lambda grid and spectrum differ in length".into()));
    }
    let m = Multipliers::new(k, c)?;
    let b = &input.baseline;
    let (dk, dk3) = input
        .lambda_grid
        .iter()
        .zip(&input.delta_phi_hat)
        .map(|(&l, &phi)| {
            let dphi = phi * b.delta;
            let (a, a3) = m.at(b, l.abs(), sign(l));
            ((b.dk_da + a) * dphi, (b.dkiii_da + a3) * dphi)
        })
        .unzip();
    Ok((dk, dk3))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrontPerturbation {
    pub x3: Vec<f64>,
    pub dk: Vec<Complex64>,
    pub dk_iii: Vec<f64>,
}

/// Relative imaginary residue above which ΔK_III is rejected.
pub const REALNESS_TOL: f64 = 1e-10;

/// Wavenumbers 2πm/L of an N-point periodic grid in FFT order.
pub fn fft_wavenumbers(n: usize, length: f64) -> Vec<f64> {
    (0..n)
        .map(|m| {
            let m = if m < n / 2 { m as f64 } else { m as f64 - n as f64 };
            2.0 * PI * m / length
        })
        .collect()
}

/// Samples φ(x₃ₙ), x₃ₙ = nL/N, of one period; N must be a power of two.
///
/// The transform convention is f̃(λ) = ∫ f e^{iλx₃} dx₃. At the Nyquist
/// bin sign λ is taken as 0 so the multiplier stays Hermitian.
pub fn perturb_front(
    profile: &[f64],
    length: f64,
    baseline: &FrontBaseline,
    k: &LLConstants,
    c: &BimaterialConstants,
) -> Result<FrontPerturbation> {
    let n = profile.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("profile length {n} is not a power of two")));
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidArgument(format!("period {length}")));
    }
    let m = Multipliers::new(k, c)?;
    let h = length / n as f64;
    let lam = fft_wavenumbers(n, length);

    let mut planner = FftPlanner::new();
    let plus = planner.plan_fft_inverse(n);
    let minus = planner.plan_fft_forward(n);
    let mut spec: Vec<Complex64> = profile.iter().map(|&v| Complex64::from(v * h)).collect();
    plus.process(&mut spec);

    let mut out = spec.clone();
    let mut out3 = spec;
    for i in 0..n {
        let dphi = out[i] * baseline.delta;
        let s = if i == n / 2 { 0.0 } else { sign(lam[i]) };
        let (a, a3) = m.at(baseline, lam[i].abs(), s);
        out[i] = (baseline.dk_da + a) * dphi;
        out3[i] = (baseline.dkiii_da + a3) * dphi;
    }
    minus.process(&mut out);
    minus.process(&mut out3);
    let norm = 1.0 / length;
    let dk: Vec<Complex64> = out.iter().map(|v| v * norm).collect();
    let scale = out3.iter().map(|v| v.norm()).fold(0.0, f64::max) * norm;
    let resid = out3.iter().map(|v| v.im.abs()).fold(0.0, f64::max) * norm;
    if resid > REALNESS_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NonRealOutput(resid / scale));
    }
    Ok(FrontPerturbation {
        x3: (0..n).map(|i| i as f64 * h).collect(),
        dk,
        dk_iii: out3.iter().map(|v| v.re * norm).collect(),
    })
}
