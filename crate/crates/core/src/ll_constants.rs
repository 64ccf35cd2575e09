//! Crack-front perturbation constants: closed forms, the small-ε series, an
//! independent recovery of γ by Fourier inversion of F₃₃⁺, and η sweeps.

use crate::bimaterial::{derive_constants, BimaterialConstants, MaterialPair};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, integrate, Tolerance};
use crate::sif_perturbation::coupling_matrices;
use crate::special_functions::gamma_unchecked;
use crate::weight_functions::f33_plus;
use crate::wiener_hopf::KernelContext;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this d* the removable ε/d ratio in γ₊ is replaced by its series.
pub const LIMIT_DSTAR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LLConstants {
    pub gamma_plus: Complex64,
    pub gamma_minus: Complex64,
    pub gamma_iii: Complex64,
    pub gamma_z: Complex64,
    pub gamma: f64,
}

impl LLConstants {
    /// (γ₊, γ₋, γ_III, γ_z, γ) as complex numbers, in that order.
    pub fn as_array(&self) -> [Complex64; 5] {
        [self.gamma_plus, self.gamma_minus, self.gamma_iii, self.gamma_z, Complex64::from(self.gamma)]
    }
}

pub const CONSTANT_NAMES: [&str; 5] = ["gamma_plus", "gamma_minus", "gamma_iii", "gamma_z", "gamma"];

/// ε/d, continued through d = 0.
fn eps_over_d(c: &BimaterialConstants) -> f64 {
    if c.d_star < LIMIT_DSTAR {
        // ε = atanh(d*)/π, so ε/d = (1 + d*²/3 + …)/(πb)
        (1.0 + c.d_star * c.d_star / 3.0) / (PI * c.b)
    } else {
        c.epsilon / c.d
    }
}

pub fn exact_constants(c: &BimaterialConstants) -> LLConstants {
    let (b, d, e, eps) = (c.b, c.d, c.e, c.epsilon);
    let sq = (b * b - d * d).sqrt();
    let q4 = sq.sqrt();
    let den = sq + b + e;
    let one_2ie = Complex64::new(1.0, 2.0 * eps);
    let g = |re: f64, im: f64| gamma_unchecked(Complex64::new(re, im));
    let pow = |base: f64, im: f64| Complex64::new(0.0, im * base.ln()).exp();

    let gamma = 2.0 / PI * (3.0 * (b + e) - sq) / den;
    let gamma_minus = 8.0 * b / (PI * one_2ie * den);
    let gamma_plus = -4.0 * eps_over_d(c) * b * g(0.5, -eps) * (sq - b - e)
        / (pow(4.0, eps) * g(0.5, eps) * g(1.0, -2.0 * eps) * den);
    let gamma_iii = -8.0 * PI.sqrt() * eps * Complex64::new(1.0, eps) * sq * q4
        / (pow(2.0, eps)
            * one_2ie
            * g(0.5, eps)
            * g(1.0, -eps)
            * den
            * ((b + d).sqrt() + (b - d).sqrt()));
    let gamma_z = -gamma_iii * one_2ie * (b + e) / sq;
    LLConstants { gamma_plus, gamma_minus, gamma_iii, gamma_z, gamma }
}

/// Truncated small-ε series in terms of ε and the composite ν.
pub fn asymptotic_constants(epsilon: f64, nu: f64) -> LLConstants {
    let l2 = 2f64.ln();
    let q = 2.0 - nu;
    let e2 = epsilon * epsilon;
    LLConstants {
        gamma_plus: Complex64::new(4.0 * nu / (PI * q), 8.0 * nu * l2 * epsilon / (PI * q)),
        gamma_minus: Complex64::new(8.0 * (1.0 - nu) / (PI * q), -16.0 * (1.0 - nu) * epsilon / (PI * q)),
        gamma_iii: Complex64::new(-4.0 * (1.0 - nu) * epsilon / q, 4.0 * (1.0 - nu) * (1.0 - l2) * e2 / q),
        gamma_z: Complex64::new(4.0 * epsilon / q, 4.0 * (1.0 + l2) * e2 / q),
        gamma: 2.0 * (2.0 + nu) / (PI * q),
    }
}

/// Discretization of the F₃₃⁺ → f₃₃ inversion.
#[derive(Debug, Clone, Copy)]
pub struct InversionSettings {
    /// Truncation point of the ξ quadrature; the tail beyond it is modelled.
    pub xi_max: f64,
    /// Largest |y| the ξ panels must resolve.
    pub y_resolve: f64,
    /// Gauss–Legendre nodes per panel.
    pub nodes: usize,
    pub y_min: f64,
    pub y_max: f64,
    pub y_count: usize,
}

impl Default for InversionSettings {
    fn default() -> Self {
        InversionSettings { xi_max: 1e4, y_resolve: 1.0, nodes: 16, y_min: 1e-4, y_max: 1.0, y_count: 41 }
    }
}

/// F₃₃⁺ sampled for inversion, with the leading term removed.
pub struct F33Transform {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// R(ξ) = F₃₃⁺(ξ) − (1+i)(ξ+i)^{−1/2} at the nodes.
    remainder: Vec<Complex64>,
    xi_max: f64,
    tail: [Complex64; TAIL_TERMS],
}

const TAIL_TERMS: usize = 5;

fn tail_basis(xi: Complex64) -> [Complex64; TAIL_TERMS] {
    let l = xi.ln();
    let p = xi.powf(-1.5);
    let q = p / xi;
    let r = q / xi;
    [p, q * l, q, r * l, r]
}

fn leading(xi: Complex64) -> Complex64 {
    Complex64::new(1.0, 1.0) / (xi + I).sqrt()
}

fn panel_breaks(ctx: &KernelContext, s: &InversionSettings) -> Vec<f64> {
    let a = ctx.a.abs();
    let mut br = vec![0.0, a];
    for h in [0.3, 0.1, 0.03] {
        br.push(a + h);
        if a - h > 0.0 {
            br.push(a - h);
        }
    }
    let mut x = 1.0;
    while x < s.xi_max {
        br.push(x);
        x *= 1.2;
    }
    br.push(s.xi_max);
    br.retain(|v| *v <= s.xi_max);
    br.sort_by(|p, q| p.partial_cmp(q).unwrap());
    br.dedup_by(|p, q| (*p - *q).abs() < 1e-12);
    let cap = 6.0 / s.y_resolve;
    let mut out = vec![br[0]];
    for w in br.windows(2) {
        let n = ((w[1] - w[0]) / cap).ceil().max(1.0) as usize;
        for k in 1..=n {
            out.push(w[0] + (w[1] - w[0]) * k as f64 / n as f64);
        }
    }
    out
}

impl F33Transform {
    pub fn new(ctx: &KernelContext, s: &InversionSettings) -> Result<Self> {
        let cm = coupling_matrices(&ctx.constants)?;
        let (gx, gw) = gauss_legendre(s.nodes);
        let br = panel_breaks(ctx, s);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for w in br.windows(2) {
            let (c, h) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
            for (x, wt) in gx.iter().zip(&gw) {
                nodes.push(c + h * x);
                weights.push(h * wt);
            }
        }
        let eval = |x: f64| -> Result<Complex64> {
            let z = Complex64::from(x);
            Ok(f33_plus(z, ctx, &cm)? - leading(z))
        };
        let remainder = nodes.par_iter().map(|&x| eval(x)).collect::<Result<Vec<_>>>()?;

        // least-squares tail model on [X/8, X]
        let m = 24;
        let fit_x: Vec<f64> =
            (0..m).map(|k| s.xi_max * 8f64.powf(k as f64 / (m - 1) as f64 - 1.0)).collect();
        let fit_y = fit_x.par_iter().map(|&x| eval(x)).collect::<Result<Vec<_>>>()?;
        let scale = tail_basis(Complex64::from(s.xi_max));
        let design = DMatrix::from_fn(m, TAIL_TERMS, |i, j| {
            tail_basis(Complex64::from(fit_x[i]))[j] / scale[j]
        });
        let rhs = DVector::from_iterator(m, fit_y.iter().map(|v| v / scale[0]));
        let sol = design
            .svd(true, true)
            .solve(&rhs, 1e-14)
            .map_err(|e| Error::ExtrapolationUnstable(format!("tail fit: {e}")))?;
        let mut tail = [Complex64::new(0.0, 0.0); TAIL_TERMS];
        for j in 0..TAIL_TERMS {
            tail[j] = sol[j] * scale[0] / scale[j];
        }
        Ok(F33Transform { nodes, weights, remainder, xi_max: s.xi_max, tail })
    }

    fn tail_model(&self, xi: Complex64) -> Complex64 {
        tail_basis(xi).iter().zip(&self.tail).map(|(b, c)| b * c).sum()
    }

    /// ∫_X^∞ model(ξ) e^{−iξy} dξ along the ray ξ = X ∓ it that makes
    /// the exponential decay.
    fn tail_integral(&self, y: f64) -> Result<Complex64> {
        let x = self.xi_max;
        let dir = -y.signum() * I;
        // t = X w²/(1−w)² keeps the integrand bounded at w = 1
        let g = |w: f64| {
            if w >= 1.0 {
                return Complex64::new(0.0, 0.0);
            }
            let om = 1.0 - w;
            let t = x * w * w / (om * om);
            let dt = 2.0 * x * w / (om * om * om);
            let xi = x + dir * t;
            self.tail_model(xi) * (-y.abs() * t).exp() * dt
        };
        let tol = Tolerance { abs: 1e-15, rel: 1e-12, max_segments: 4000 };
        let v = integrate(g, &[0.0, 0.5, 0.9, 0.99, 1.0], tol)?;
        Ok(dir * (-I * x * y).exp() * v)
    }

    /// r(y) = f₃₃(y) − √(2/π) e^{−y} y^{−1/2} H(y), using F₃₃⁺(−ξ) = conj F₃₃⁺(ξ).
    pub fn remainder_inverse(&self, y: f64) -> Result<f64> {
        let body: Complex64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .zip(&self.remainder)
            .map(|((&x, &w), &r)| w * r * (-I * x * y).exp())
            .sum();
        Ok((body + self.tail_integral(y)?).re / PI)
    }

    pub fn f33(&self, y: f64) -> Result<f64> {
        let r = self.remainder_inverse(y)?;
        if y > 0.0 {
            Ok(r + (2.0 / PI).sqrt() * (-y).exp() / y.sqrt())
        } else {
            Ok(r)
        }
    }

    /// Fitted coefficient of ξ^{−3/2} in the remainder.
    pub fn tail_leading(&self) -> Complex64 {
        self.tail[0]
    }
}

/// Everything computed on the way to γ by inversion.
#[derive(Debug, Clone, Serialize)]
pub struct InversionReport {
    pub y: Vec<f64>,
    pub f33: Vec<f64>,
    /// E(y) = r(y)/√y, whose limit at y = 0 is √(2/π) − √(π/2)γ.
    pub e: Vec<f64>,
    /// Successive extrapolated values of γ.
    pub table: Vec<f64>,
    pub gamma: f64,
}

pub fn gamma_via_inversion(ctx: &KernelContext) -> Result<f64> {
    Ok(inversion_report(ctx, &InversionSettings::default())?.gamma)
}

pub fn inversion_report(ctx: &KernelContext, s: &InversionSettings) -> Result<InversionReport> {
    let tr = F33Transform::new(ctx, s)?;
    let y: Vec<f64> = (0..s.y_count)
        .map(|k| s.y_min * (s.y_max / s.y_min).powf(k as f64 / (s.y_count - 1) as f64))
        .collect();
    let r = y.iter().map(|&v| tr.remainder_inverse(v)).collect::<Result<Vec<_>>>()?;
    let f33 = y.iter().zip(&r).map(|(&v, &rv)| rv + (2.0 / PI).sqrt() * (-v).exp() / v.sqrt()).collect();
    let e: Vec<f64> = y.iter().zip(&r).map(|(&v, &rv)| rv / v.sqrt()).collect();
    let (table, e0) = extrapolate(&y, &e)?;
    let gamma = 2.0 / PI - (2.0 / PI).sqrt() * e0;
    let table = table.iter().map(|t| 2.0 / PI - (2.0 / PI).sqrt() * t).collect();
    Ok(InversionReport { y, f33, e, table, gamma })
}

/// Window limits of the Richardson table, largest first.
const WINDOWS: [f64; 4] = [1e-1, 3e-2, 1e-2, 3e-3];

/// Differences between table entries below this fraction of |E| are
/// treated as noise in the monotonicity check.
const TABLE_NOISE: f64 = 1e-5;

/// Least-squares fit E(y) ≈ E₀ + c₁ y log y + c₂ y on shrinking windows
/// y ≤ w; the table is the sequence of E₀ values.
fn extrapolate(y: &[f64], e: &[f64]) -> Result<(Vec<f64>, f64)> {
    let mut table = Vec::new();
    for w in WINDOWS {
        let idx: Vec<usize> = (0..y.len()).filter(|&i| y[i] <= w * (1.0 + 1e-9)).collect();
        if idx.len() < 5 {
            return Err(Error::ExtrapolationUnstable(format!("only {} samples below y = {w}", idx.len())));
        }
        let a = DMatrix::from_fn(idx.len(), 3, |i, j| {
            let v = y[idx[i]];
            [1.0, v * v.ln(), v][j]
        });
        let b = DVector::from_iterator(idx.len(), idx.iter().map(|&i| e[i]));
        let sol = a
            .svd(true, true)
            .solve(&b, 1e-15)
            .map_err(|m| Error::ExtrapolationUnstable(m.to_string()))?;
        table.push(sol[0]);
    }
    let floor = TABLE_NOISE * table[0].abs().max(1.0);
    for k in 2..table.len() {
        let prev = (table[k - 1] - table[k - 2]).abs();
        let cur = (table[k] - table[k - 1]).abs();
        if cur > prev.max(floor) {
            return Err(Error::ExtrapolationUnstable(format!("table {table:?} does not contract")));
        }
    }
    let last = *table.last().unwrap();
    Ok((table, last))
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRecord {
    pub eta: f64,
    pub epsilon: f64,
    pub swapped: bool,
    pub exact: LLConstants,
    pub asymptotic: LLConstants,
    /// |exact/asymptotic| per constant; NaN where both vanish.
    pub modulus_ratios: [f64; 5],
}

/// Pair with μ₊ = 1 + η, μ₋ = 1 − η.
pub fn eta_pair(nu_plus: f64, nu_minus: f64, eta: f64) -> Result<MaterialPair> {
    if !(eta > -1.0 && eta < 1.0) {
        return Err(Error::InvalidArgument(format!("eta = {eta} outside (-1, 1)")));
    }
    MaterialPair::new(nu_plus, 1.0 + eta, nu_minus, 1.0 - eta)
}

pub fn sweep_point(nu_plus: f64, nu_minus: f64, eta: f64) -> Result<SweepRecord> {
    let c = derive_constants(&eta_pair(nu_plus, nu_minus, eta)?)?;
    let exact = exact_constants(&c);
    let asymptotic = asymptotic_constants(c.epsilon, c.nu_composite);
    let mut modulus_ratios = [0.0; 5];
    for (k, (x, y)) in exact.as_array().iter().zip(asymptotic.as_array()).enumerate() {
        modulus_ratios[k] = if x.norm() == 0.0 && y.norm() == 0.0 { f64::NAN } else { x.norm() / y.norm() };
    }
    Ok(SweepRecord { eta, epsilon: c.epsilon, swapped: c.pair.swapped, exact, asymptotic, modulus_ratios })
}

/// Evaluates the grid in parallel; records come back in grid order.
pub fn sweep(nu_plus: f64, nu_minus: f64, eta_grid: &[f64]) -> Result<Vec<SweepRecord>> {
    eta_grid.par_iter().map(|&eta| sweep_point(nu_plus, nu_minus, eta)).collect()
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from("eta,epsilon");
    for n in CONSTANT_NAMES {
        out.push_str(&format!(",{n}_re_exact,{n}_im_exact,{n}_re_asym,{n}_im_asym,{n}_modulus_ratio"));
    }
    out.push('\n');
    let f = |x: f64| format!("{x:.16e}");
    for r in records {
        out.push_str(&f(r.eta));
        out.push(',');
        out.push_str(&f(r.epsilon));
        for (k, (x, y)) in r.exact.as_array().iter().zip(r.asymptotic.as_array()).enumerate() {
            for v in [x.re, x.im, y.re, y.im, r.modulus_ratios[k]] {
                out.push(',');
                out.push_str(&f(v));
            }
        }
        out.push('\n');
    }
    out
}
