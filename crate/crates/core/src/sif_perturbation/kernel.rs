//! Physical-space weight-function jumps and the point-force SIF kernels h_kp.
//!
//! The jumps [Ũʲ_h]⁺(x₁, λ) = |λ| u_h^j(|λ|x₁, sign λ), where u is the
//! inverse transform (1/2π)∫[Ū*ʲ_h]⁺(ξ) e^{−iξy} dξ. The ξ^{−1/2} family
//! at infinity is removed with exactly invertible (ξ+i)^{−ν} terms, the
//! rest is integrated on [−X, X] and continued past ±X with a fitted model.

use super::{CouplingMatrices, I};
use crate::error::{Error, Result};
use crate::ll_constants::F33Transform;
use crate::quadrature::{gauss_legendre, integrate, Tolerance};
use crate::special_functions::{gamma_unchecked, log_branch, HalfPlane};
use crate::weight_functions::{make_weight_function, to_physical, WeightIndex};
use crate::wiener_hopf::KernelContext;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Scalar functions per sample: sign λ (2) × weight function j (3) × component h (3).
const FUNCS: usize = 18;
/// Columns of the far-field model: orders ξ^{−1/2}, ξ^{−3/2}, ξ^{−5/2},
/// each times {1, S, C}.
const MODEL: usize = 9;
/// The first LEAD columns are subtracted and inverted exactly.
const LEAD: usize = 3;
/// Below this ε the S and C inverse transforms switch to their series.
const SMALL_EPS: f64 = 1e-3;

fn fidx(s: usize, j: usize, h: usize) -> usize {
    s * 9 + j * 3 + h
}

#[derive(Debug, Clone, Copy)]
pub struct KernelSettings {
    pub xi_max: f64,
    /// Upper end of the y range over which jumps must be resolved.
    pub y_max: f64,
    pub nodes: usize,
}

impl Default for KernelSettings {
    fn default() -> Self {
        KernelSettings { xi_max: 100.0, y_max: 32.0, nodes: 16 }
    }
}

/// Far-field basis at w = ξ + i: w^{−1/2−m}·{1, sin(εL)/ε, (cos(εL)−1)/ε²},
/// L = log w with the cut running down from w = 0.
fn model_basis(xi: Complex64, eps: f64) -> [Complex64; MODEL] {
    let w = xi + I;
    let l = log_branch(w, HalfPlane::Upper);
    let el = l * eps;
    let s = if eps == 0.0 { l } else { el.sin() / eps };
    let half = (el * 0.5).sin();
    let c = if eps == 0.0 { -l * l * 0.5 } else { -2.0 * half * half / (eps * eps) };
    let mut out = [ZERO; MODEL];
    let mut p = (l * -0.5).exp();
    for m in 0..3 {
        out[3 * m] = p;
        out[3 * m + 1] = p * s;
        out[3 * m + 2] = p * c;
        p /= w;
    }
    out
}

/// (1/2π)∫(ξ+i)^{−ν}e^{−iξy}dξ = e^{−iπν/2} y^{ν−1} e^{−y}/Γ(ν) for y > 0.
fn lead_inverse(nu: Complex64, y: f64) -> Complex64 {
    (-I * PI * nu / 2.0 + (nu - 1.0) * y.ln() - y).exp() / gamma_unchecked(nu)
}

/// Exact inverse transforms of the three LEAD basis functions at y > 0.
fn lead_inverses(y: f64, eps: f64) -> [Complex64; LEAD] {
    let nu0 = Complex64::new(0.5, 0.0);
    let t0 = lead_inverse(nu0, y);
    if eps >= SMALL_EPS {
        let tm = lead_inverse(nu0 - I * eps, y);
        let tp = lead_inverse(nu0 + I * eps, y);
        [t0, (tm - tp) / (2.0 * I * eps), ((tm + tp) * 0.5 - t0) / (eps * eps)]
    } else {
        // derivatives in ν at ν = 1/2: φ' = −iπ/2 + log y − ψ(1/2), φ'' = −ψ'(1/2)
        let psi = -0.577_215_664_901_532_9 - 2.0 * 2f64.ln();
        let d1 = -I * PI / 2.0 + y.ln() - psi;
        let d2 = -PI * PI / 2.0;
        [t0, -t0 * d1, -t0 * (d1 * d1 + d2) * 0.5]
    }
}

/// Ray quadrature for ∫ model(ξ) e^{−iξy} dξ beyond ±X.
struct Ray {
    t: Vec<f64>,
    w: Vec<f64>,
    /// basis at ±X ∓ it (index 0: +X end, 1: −X end), for the two
    /// rotation directions (index 0: downward, for y > 0; 1: upward).
    basis: [[Vec<[Complex64; MODEL]>; 2]; 2],
}

impl Ray {
    fn new(x: f64, eps: f64) -> Ray {
        let (gx, gw) = gauss_legendre(20);
        // t = X u²/(1−u)² on graded u panels
        let br = [0.0, 0.002, 0.01, 0.03, 0.1, 0.25, 0.5, 0.75, 0.9, 0.97, 1.0];
        let (mut t, mut w) = (Vec::new(), Vec::new());
        for p in br.windows(2) {
            let (c, h) = (0.5 * (p[0] + p[1]), 0.5 * (p[1] - p[0]));
            for (g, gwt) in gx.iter().zip(&gw) {
                let u: f64 = c + h * g;
                let om = 1.0 - u;
                t.push(x * u * u / (om * om));
                w.push(h * gwt * 2.0 * x * u / (om * om * om));
            }
        }
        let mk = |end: f64, dir: f64| -> Vec<[Complex64; MODEL]> {
            t.iter().map(|&tt| model_basis(Complex64::new(end, dir * tt), eps)).collect()
        };
        let basis = [[mk(x, -1.0), mk(-x, -1.0)], [mk(x, 1.0), mk(-x, 1.0)]];
        Ray { t, w, basis }
    }

    /// Per basis column: ∫_X^∞ + ∫_{−∞}^{−X} of φ(ξ) e^{−iξy} dξ.
    fn integrals(&self, x: f64, y: f64) -> [Complex64; MODEL] {
        let (k, dir) = if y > 0.0 { (0, -1.0) } else { (1, 1.0) };
        let mut out = [ZERO; MODEL];
        let ph_p = (-I * x * y).exp();
        let ph_m = (I * x * y).exp();
        for n in 0..self.t.len() {
            let damp = (-self.t[n] * y.abs()).exp() * self.w[n];
            if damp == 0.0 {
                continue;
            }
            // ∫_X^∞ = (dir·i)∫ f(X + dir·it) dt, ∫_{−∞}^{−X} = −(dir·i)∫ f(−X + dir·it) dt
            let a = ph_p * damp * dir * I;
            let b = -ph_m * damp * dir * I;
            for c in 0..MODEL {
                out[c] += a * self.basis[k][0][n][c] + b * self.basis[k][1][n][c];
            }
        }
        out
    }
}

/// Inverse ξ-transforms of all nine jump components of the three weight
/// functions, for both signs of λ.
pub struct WeightJumps {
    eps: f64,
    xi_max: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// remainder after the LEAD subtraction, `[node][fidx]`
    rem: Vec<[Complex64; FUNCS]>,
    coef: [[Complex64; MODEL]; FUNCS],
    ray: Ray,
}

fn jump_samples(ctx: &KernelContext, xi: f64) -> Result<[Complex64; FUNCS]> {
    let k = ctx.plus_kernel(Complex64::from(xi))?;
    let mut out = [ZERO; FUNCS];
    for (si, s) in [1.0, -1.0].into_iter().enumerate() {
        for (ji, j) in WeightIndex::ALL.into_iter().enumerate() {
            let u = to_physical(make_weight_function(j, ctx).plus_from(&k, s));
            for h in 0..3 {
                out[fidx(si, ji, h)] = u[h];
            }
        }
    }
    Ok(out)
}

fn panels(a: f64, s: &KernelSettings) -> Vec<f64> {
    let x = s.xi_max;
    let mut br = vec![-x, 0.0, x];
    for sgn in [-1.0, 1.0] {
        br.push(sgn * a);
        for h in [0.3, 0.1, 0.03] {
            br.push(sgn * (a + h));
            if a - h > 0.0 {
                br.push(sgn * (a - h));
            }
        }
        let mut v = 1.0;
        while v < x {
            br.push(sgn * v);
            v *= 1.2;
        }
    }
    br.retain(|v| v.abs() <= x);
    br.sort_by(|p, q| p.partial_cmp(q).unwrap());
    br.dedup_by(|p, q| (*p - *q).abs() < 1e-12);
    let cap = 6.0 / s.y_max;
    let mut out = vec![br[0]];
    for w in br.windows(2) {
        let n = ((w[1] - w[0]) / cap).ceil().max(1.0) as usize;
        for k in 1..=n {
            out.push(w[0] + (w[1] - w[0]) * k as f64 / n as f64);
        }
    }
    out
}

impl WeightJumps {
    pub fn new(ctx: &KernelContext, s: &KernelSettings) -> Result<Self> {
        let eps = ctx.constants.epsilon;
        let x = s.xi_max;
        let (gx, gw) = gauss_legendre(s.nodes);
        let (mut nodes, mut weights) = (Vec::new(), Vec::new());
        for p in panels(ctx.a.abs(), s).windows(2) {
            let (c, h) = (0.5 * (p[0] + p[1]), 0.5 * (p[1] - p[0]));
            for (g, w) in gx.iter().zip(&gw) {
                nodes.push(c + h * g);
                weights.push(h * w);
            }
        }
        let mut vals = nodes.par_iter().map(|&v| jump_samples(ctx, v)).collect::<Result<Vec<_>>>()?;

        // far-field fit on X/8 ≤ |ξ| ≤ X, both sides at once
        let m = 24;
        let fit_x: Vec<f64> = (0..2 * m)
            .map(|k| {
                let v = x * 8f64.powf((k % m) as f64 / (m - 1) as f64 - 1.0);
                if k < m {
                    v
                } else {
                    -v
                }
            })
            .collect();
        let fit_y = fit_x.par_iter().map(|&v| jump_samples(ctx, v)).collect::<Result<Vec<_>>>()?;
        let scale = model_basis(Complex64::from(x), eps).map(|v| v.norm());
        let design = DMatrix::from_fn(2 * m, MODEL, |i, c| model_basis(Complex64::from(fit_x[i]), eps)[c] / scale[c]);
        let svd = design.svd(true, true);
        let mut coef = [[ZERO; MODEL]; FUNCS];
        for q in 0..FUNCS {
            let rhs = DVector::from_iterator(2 * m, fit_y.iter().map(|v| v[q]));
            let sol = svd
                .solve(&rhs, 1e-13)
                .map_err(|e| Error::ExtrapolationUnstable(format!("jump far-field fit: {e}")))?;
            for c in 0..MODEL {
                coef[q][c] = sol[c] / scale[c];
            }
        }
        for (v, xi) in vals.iter_mut().zip(&nodes) {
            let b = model_basis(Complex64::from(*xi), eps);
            for q in 0..FUNCS {
                let lead: Complex64 = (0..LEAD).map(|c| coef[q][c] * b[c]).sum();
                v[q] -= lead;
            }
        }
        Ok(WeightJumps { eps, xi_max: x, nodes, weights, rem: vals, coef, ray: Ray::new(x, eps) })
    }

    /// u_h^j(y, s) for every (s, j, h), indexed `[s][j][h]` with s = 0 for λ > 0.
    pub fn eval(&self, y: f64) -> [[[Complex64; 3]; 3]; 2] {
        let mut acc = [ZERO; FUNCS];
        for ((xi, w), r) in self.nodes.iter().zip(&self.weights).zip(&self.rem) {
            let ph = (-I * xi * y).exp() * *w;
            for q in 0..FUNCS {
                acc[q] += ph * r[q];
            }
        }
        let tails = if y != 0.0 { self.ray.integrals(self.xi_max, y) } else { [ZERO; MODEL] };
        let leads = if y > 0.0 { lead_inverses(y, self.eps) } else { [ZERO; LEAD] };
        let mut out = [[[ZERO; 3]; 3]; 2];
        for s in 0..2 {
            for j in 0..3 {
                for h in 0..3 {
                    let q = fidx(s, j, h);
                    let c = &self.coef[q];
                    let tail: Complex64 = (LEAD..MODEL).map(|k| c[k] * tails[k]).sum();
                    let lead: Complex64 = (0..LEAD).map(|k| c[k] * leads[k]).sum();
                    out[s][j][h] = (acc[q] + tail) / (2.0 * PI) + lead;
                }
            }
        }
        out
    }
}

/// R = diag(−1, 1, −1).
fn r_diag(p: usize) -> f64 {
    if p == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Power of |λ| carried by row k of 𝓑̃ beyond |λ|^{−1/2}: +iε, −iε, 0.
fn row_phase(k: usize) -> f64 {
    match k {
        0 => 1.0,
        1 => -1.0,
        _ => 0.0,
    }
}

/// g_kp(y, s) = i R_pp Σⱼ 𝓑̃_kj(s) u_p^j(y, s) for all k, p.
fn g_matrix(u: &[[[Complex64; 3]; 3]; 2], bt: &[nalgebra::Matrix3<Complex64>; 2]) -> [[[Complex64; 3]; 3]; 2] {
    let mut g = [[[ZERO; 3]; 3]; 2];
    for s in 0..2 {
        for k in 0..3 {
            for p in 0..3 {
                let sum: Complex64 = (0..3).map(|j| bt[s][(k, j)] * u[s][j][p]).sum();
                g[s][k][p] = I * r_diag(p) * sum;
            }
        }
    }
    g
}

/// The nine kernels h_kp(x, t) (indices 1-based in the docs, 0-based here),
/// from precomputed jumps on a fixed y grid.
pub struct WeightKernel {
    eps: f64,
    y: Vec<f64>,
    wy: Vec<f64>,
    /// `[0]`: g at +y (for x < 0), `[1]`: g at −y (for x > 0); then `[n][s][k][p]`.
    g: [Vec<[[[Complex64; 3]; 3]; 2]>; 2],
}

impl WeightKernel {
    pub fn new(ctx: &KernelContext, s: &KernelSettings) -> Result<Self> {
        let jumps = WeightJumps::new(ctx, s)?;
        let cm = super::coupling_matrices(&ctx.constants)?;
        Ok(Self::from_jumps(&jumps, &cm, s.y_max))
    }

    pub fn from_jumps(jumps: &WeightJumps, cm: &CouplingMatrices, y_max: f64) -> Self {
        let bt = [cm.b_tilde(1.0), cm.b_tilde(-1.0)];
        let (gx, gw) = gauss_legendre(16);
        let mut br: Vec<f64> = (0..=14).map(|k| 1e-8 * 4f64.powi(k)).filter(|v| *v < 1.0).collect();
        let mut v = 1.0;
        while v < y_max {
            br.push(v);
            v += 0.25;
        }
        br.push(y_max);
        let (mut y, mut wy) = (Vec::new(), Vec::new());
        for p in br.windows(2) {
            let (c, h) = (0.5 * (p[0] + p[1]), 0.5 * (p[1] - p[0]));
            for (g, w) in gx.iter().zip(&gw) {
                y.push(c + h * g);
                wy.push(h * w);
            }
        }
        let side = |sgn: f64| -> Vec<_> { y.par_iter().map(|&v| g_matrix(&jumps.eval(sgn * v), &bt)).collect() };
        let g = [side(1.0), side(-1.0)];
        WeightKernel { eps: jumps.eps, y, wy, g }
    }

    /// h_kp(x, t) = (1/2π)|x|^{−3/2−iκε} ∫₀^∞ y^{1/2+iκε}
    /// [e^{−iτy} g(∓y, +) + e^{iτy} g(∓y, −)] dy with τ = t/|x|.
    pub fn h(&self, k: usize, p: usize, x: f64, t: f64) -> Result<Complex64> {
        if k > 2 || p > 2 {
            return Err(Error::InvalidArgument(format!("kernel index ({}, {})", k + 1, p + 1)));
        }
        if x == 0.0 {
            return Err(Error::InvalidArgument("x = 0".into()));
        }
        let kap = row_phase(k) * self.eps;
        let side = if x < 0.0 { 0 } else { 1 };
        let ax = x.abs();
        let tau = t / ax;
        let mut acc = ZERO;
        for n in 0..self.y.len() {
            let yv = self.y[n];
            let pw = Complex64::new(0.5, kap) * yv.ln();
            let e = (-I * tau * yv).exp();
            let g = &self.g[side][n];
            acc += pw.exp() * self.wy[n] * (e * g[0][k][p] + e.conj() * g[1][k][p]);
        }
        let pre = (Complex64::new(-1.5, -kap) * ax.ln()).exp() / (2.0 * PI);
        Ok(pre * acc)
    }
}

/// h_kp(x, t) with default settings. Each call rebuilds the transforms, so
/// prefer [`WeightKernel`] for more than one evaluation.
pub fn ll_weight_kernel(k: usize, p: usize, x: f64, t: f64, ctx: &KernelContext) -> Result<Complex64> {
    if k == 0 || p == 0 {
        return Err(Error::InvalidArgument("kernel indices are 1-based".into()));
    }
    WeightKernel::new(ctx, &KernelSettings::default())?.h(k - 1, p - 1, x, t)
}

/// h₃₃(x, t) = (1/(π(−x)^{3/2})) ∫₀^∞ √y cos(y|t/x|) f₃₃(y) dy for x < 0.
/// The leading e^{−y}/√y part of f₃₃ is integrated in closed form.
pub fn h33_single_integral(x: f64, t: f64, f33: &F33Transform, y_max: f64) -> Result<f64> {
    if x >= 0.0 {
        return Err(Error::InvalidArgument("single-integral form needs x < 0".into()));
    }
    let tau = (t / x).abs();
    let lead = (2.0 / PI).sqrt() / (1.0 + tau * tau);
    let mut err = None;
    let f = |y: f64| {
        if y <= 0.0 {
            return ZERO;
        }
        match f33.remainder_inverse(y) {
            Ok(r) => Complex64::from(y.sqrt() * (tau * y).cos() * r),
            Err(e) => {
                err.get_or_insert(e);
                ZERO
            }
        }
    };
    let mut br = vec![0.0, 1e-3, 0.1, 1.0];
    let mut v = 2.0;
    while v < y_max {
        br.push(v);
        v += 1.0;
    }
    br.push(y_max);
    let tol = Tolerance { abs: 1e-11, rel: 1e-10, max_segments: 2000 };
    let body = integrate(f, &br, tol)?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok((lead + body.re) / (PI * (-x).powf(1.5)))
}

/// Offsets x₁' ∈ {h, h/2, h/4, h/8} for the limit, and the x₁ grid.
#[derive(Debug, Clone, Copy)]
pub struct SifSettings {
    pub h: f64,
    /// Panels per decade of the graded x₁ grid.
    pub panels_per_decade: usize,
    pub nodes: usize,
}

impl Default for SifSettings {
    fn default() -> Self {
        SifSettings { h: 1e-4, panels_per_decade: 4, nodes: 16 }
    }
}

/// K̃_k(λ) = −i lim_{x₁'→0} 𝓑̃_kj(λ) ∫_{x_min}^0 p̃_i(x₁, λ) R_ih [Ũʲ_h]⁺(x₁'−x₁, λ) dx₁.
///
/// `load(x1, lambda)` returns (p̃₁, p̃₂, p̃₃); it is taken as zero below `x_min`.
pub fn sif_from_load<F>(
    load: F,
    x_min: f64,
    lambda: f64,
    jumps: &WeightJumps,
    cm: &CouplingMatrices,
    s: &SifSettings,
) -> Result<[Complex64; 3]>
where
    F: Fn(f64, f64) -> [Complex64; 3],
{
    if !(x_min < 0.0) {
        return Err(Error::InvalidArgument("x_min must be negative".into()));
    }
    if lambda == 0.0 {
        return Err(Error::InvalidArgument("lambda = 0".into()));
    }
    let (gx, gw) = gauss_legendre(s.nodes);
    // graded towards x₁ = 0 where the jumps are singular
    let lo = (s.h / 16.0).min(-x_min * 1e-3);
    let decades = (-x_min / lo).log10().ceil() as usize;
    let n_pan = decades * s.panels_per_decade;
    let mut br: Vec<f64> = (0..=n_pan).map(|k| x_min * (lo / -x_min).powf(k as f64 / n_pan as f64)).collect();
    br.push(0.0);
    let (mut xs, mut ws) = (Vec::new(), Vec::new());
    for p in br.windows(2) {
        let (c, h) = (0.5 * (p[0] + p[1]), 0.5 * (p[1] - p[0]));
        for (g, w) in gx.iter().zip(&gw) {
            xs.push(c + h * g);
            ws.push(h * w);
        }
    }
    let loads: Vec<[Complex64; 3]> = xs.iter().map(|&x| load(x, lambda)).collect();
    let peak = loads.iter().flat_map(|v| v.iter().map(|c| c.norm())).fold(0.0, f64::max);
    if peak == 0.0 {
        return Ok([ZERO; 3]);
    }
    let edge = load(x_min, lambda).iter().map(|c| c.norm()).fold(0.0, f64::max);
    if edge > 1e-8 * peak {
        return Err(Error::LoadDecayTooSlow(format!(
            "|p(x_min)| = {edge:e} against peak {peak:e}; extend x_min"
        )));
    }
    let si = if lambda > 0.0 { 0 } else { 1 };
    let al = lambda.abs();
    let bt = cm.b_tilde(lambda);
    let at = |off: f64| -> [Complex64; 3] {
        let per_node: Vec<[Complex64; 3]> = xs
            .par_iter()
            .zip(&ws)
            .zip(&loads)
            .map(|((&x, &w), p)| {
                let u = jumps.eval(al * (off - x));
                let mut v = [ZERO; 3];
                for j in 0..3 {
                    for i in 0..3 {
                        v[j] += p[i] * r_diag(i) * u[si][j][i] * w;
                    }
                }
                v
            })
            .collect();
        let mut m = [ZERO; 3];
        for v in per_node {
            for j in 0..3 {
                m[j] += v[j];
            }
        }
        let mut k = [ZERO; 3];
        for kk in 0..3 {
            k[kk] = -I * al * (0..3).map(|j| bt[(kk, j)] * m[j]).sum::<Complex64>();
        }
        k
    };
    let hs = [s.h, s.h / 2.0, s.h / 4.0, s.h / 8.0];
    let v = hs.map(|h| at(h));
    // I(h) = I₀ + a h^{1/2} cos(ε log h) + b h^{1/2} sin(ε log h)/ε + c h
    let eps = cm.epsilon;
    let basis = |h: f64| {
        let l = h.ln();
        let sn = if eps == 0.0 { l } else { (eps * l).sin() / eps };
        [1.0, h.sqrt() * (eps * l).cos(), h.sqrt() * sn, h]
    };
    let m = nalgebra::Matrix4::from_fn(|i, j| basis(hs[i])[j]);
    let inv = m.try_inverse().ok_or_else(|| Error::ExtrapolationUnstable("singular offset system".into()))?;
    let mut out = [ZERO; 3];
    for k in 0..3 {
        let d: Vec<f64> = (0..3).map(|i| (v[i][k] - v[i + 1][k]).norm()).collect();
        if d[2] > d[0] * (1.0 + 1e-9) + 1e-14 * v[3][k].norm().max(1e-300) {
            return Err(Error::ExtrapolationUnstable(format!("offset sequence for K{} does not contract", k + 1)));
        }
        out[k] = (0..4).map(|i| inv[(0, i)] * v[i][k]).sum();
    }
    Ok(out)
}

/// Transform in x₃ of the SIFs due to a unit point force −e_p δ(x₁−x)δ(x₃)
/// on the crack faces: i|λ| 𝓑̃_kj(λ) R_pp u_p^j(−x|λ|, sign λ), indexed `[k]`.
pub fn point_force_sif(p: usize, x: f64, lambda: f64, jumps: &WeightJumps, cm: &CouplingMatrices) -> Result<[Complex64; 3]> {
    if p > 2 {
        return Err(Error::InvalidArgument(format!("force component {}", p + 1)));
    }
    if !(x < 0.0) || lambda == 0.0 {
        return Err(Error::InvalidArgument("need x < 0 and lambda != 0".into()));
    }
    let al = lambda.abs();
    let si = if lambda > 0.0 { 0 } else { 1 };
    let u = jumps.eval(-x * al);
    let bt = cm.b_tilde(lambda);
    Ok(std::array::from_fn(|k| {
        I * al * r_diag(p) * (0..3).map(|j| bt[(k, j)] * u[si][j][p]).sum::<Complex64>()
    }))
}
