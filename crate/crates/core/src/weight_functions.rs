//! Fourier transforms of the three weight functions and their large-ξ
//! asymptotics.
//!
//! Components are stored in the kernel's own order φ* = (φ₁, φ₂, φ₃).
//! On the displacement side that is (U₂, U₃, U₁), on the traction side
//! (Σ₂₂, Σ₃₂, Σ₁₂). [`to_physical`] converts to (1, 2, 3) order.

use crate::error::{Error, Result};
use crate::sif_perturbation::CouplingMatrices;
use crate::special_functions::{pow_branch, HalfPlane};
use crate::wiener_hopf::{rho, KernelContext};
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Evaluations closer than this to ±a or ±i go through extrapolation.
pub const SINGULAR_RADIUS: f64 = 1e-6;
const EXTRAPOLATION_STEP: f64 = 2e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightIndex {
    W1,
    W2,
    W3,
}

impl WeightIndex {
    pub const ALL: [WeightIndex; 3] = [WeightIndex::W1, WeightIndex::W2, WeightIndex::W3];

    pub fn from_number(j: usize) -> Result<Self> {
        match j {
            1 => Ok(WeightIndex::W1),
            2 => Ok(WeightIndex::W2),
            3 => Ok(WeightIndex::W3),
            _ => Err(Error::InvalidArgument(format!("weight function index {j}"))),
        }
    }
}

pub type C3 = [Complex64; 3];

/// Permuted order (φ₁, φ₂, φ₃) → physical (1, 2, 3).
pub fn to_physical(v: C3) -> C3 {
    [v[2], v[0], v[1]]
}

/// F₁, F₂ at a point of the closed upper half-plane.
#[derive(Debug, Clone, Copy)]
pub struct PlusKernel {
    pub xi: Complex64,
    pub f1: Complex64,
    pub f2: Complex64,
}

/// P₁, P₂ at a point of the closed lower half-plane.
#[derive(Debug, Clone, Copy)]
pub struct MinusKernel {
    pub xi: Complex64,
    pub p1: Complex64,
    pub p2: Complex64,
}

impl KernelContext {
    pub fn plus_kernel(&self, xi: Complex64) -> Result<PlusKernel> {
        let f = self.plus_factors(xi)?;
        let r2 = xi * xi + 1.0;
        let k = -I * self.m_minus / self.ds * f.lambda;
        Ok(PlusKernel { xi, f1: k * f.sigma1 / r2, f2: k * f.sigma2 })
    }

    pub fn minus_kernel(&self, xi: Complex64) -> Result<MinusKernel> {
        let f = self.minus_factors(xi)?;
        let k = self.m_minus * f.lambda;
        Ok(MinusKernel { xi, p1: k * f.sin / rho(xi), p2: k * f.cos })
    }
}

#[derive(Debug, Clone)]
pub struct WeightFunctionSet {
    pub j: WeightIndex,
    ctx: KernelContext,
}

pub fn make_weight_function(j: WeightIndex, ctx: &KernelContext) -> WeightFunctionSet {
    WeightFunctionSet { j, ctx: ctx.clone() }
}

impl WeightFunctionSet {
    pub fn context(&self) -> &KernelContext {
        &self.ctx
    }

    /// C₁..C₆ for sign λ = s.
    pub fn coefficients(&self, s: f64) -> [Complex64; 6] {
        coefficients(self.j, &self.ctx, s)
    }

    /// φ*⁺ʲ from precomputed F₁, F₂.
    pub fn plus_from(&self, k: &PlusKernel, s: f64) -> C3 {
        plus_components(self.j, &self.ctx, k, s)
    }

    pub fn minus_from(&self, k: &MinusKernel, s: f64) -> C3 {
        minus_components(self.j, &self.ctx, k, s)
    }

    /// φ*⁺ʲ(ξ), permuted order, Im ξ ≥ 0.
    pub fn plus(&self, xi: Complex64, s: f64) -> Result<C3> {
        self.guarded(xi, HalfPlane::Upper, |x| {
            let k = self.ctx.plus_kernel(x)?;
            Ok(self.plus_from(&k, s))
        })
    }

    /// φ*⁻ʲ(ξ), permuted order, Im ξ ≤ 0.
    pub fn minus(&self, xi: Complex64, s: f64) -> Result<C3> {
        self.guarded(xi, HalfPlane::Lower, |x| {
            let k = self.ctx.minus_kernel(x)?;
            Ok(self.minus_from(&k, s))
        })
    }

    /// Evaluate directly, or by quadratic extrapolation when ξ sits on top
    /// of one of the removable points ±a, ±i.
    fn guarded<F: Fn(Complex64) -> Result<C3>>(&self, xi: Complex64, hp: HalfPlane, f: F) -> Result<C3> {
        let a = self.ctx.a;
        let specials = [Complex64::from(a), Complex64::from(-a), I, -I];
        let near = specials.iter().find(|p| (xi - **p).norm() < SINGULAR_RADIUS);
        let Some(&p) = near else { return f(xi) };
        let off = xi - p;
        let dir = if off.norm() > 0.0 {
            off / off.norm()
        } else if p.im == 0.0 {
            Complex64::from(1.0)
        } else {
            Complex64::new(0.0, hp.sign())
        };
        let t = off.norm();
        let h = EXTRAPOLATION_STEP;
        let vals: Vec<C3> = (1..=3)
            .map(|k| {
                let x = p + dir * (h * k as f64);
                // keep the nodes in the closed designated half-plane
                let x = if x.im * hp.sign() < 0.0 { Complex64::new(x.re, 0.0) } else { x };
                f(x)
            })
            .collect::<Result<_>>()?;
        // Lagrange weights for nodes h, 2h, 3h evaluated at t
        let (t1, t2, t3) = (h, 2.0 * h, 3.0 * h);
        let w1 = (t - t2) * (t - t3) / ((t1 - t2) * (t1 - t3));
        let w2 = (t - t1) * (t - t3) / ((t2 - t1) * (t2 - t3));
        let w3 = (t - t1) * (t - t2) / ((t3 - t1) * (t3 - t2));
        Ok(std::array::from_fn(|i| vals[0][i] * w1 + vals[1][i] * w2 + vals[2][i] * w3))
    }

    /// The rational vector that both Y*⁺φ*⁺ and Y*⁻φ*⁻ must equal.
    pub fn entire_vector(&self, xi: Complex64, s: f64) -> C3 {
        let c = self.coefficients(s);
        let a = self.ctx.a;
        [
            c[0] / (xi - I) + c[1] / (xi + I),
            c[2] / (xi + I) + c[3] / (xi - a),
            c[4] / (xi - a) + c[5],
        ]
    }

    /// Residuals of the three analyticity conditions for the stored C's.
    pub fn conditions(&self, s: f64) -> [Complex64; 3] {
        conditions(&self.ctx, &self.coefficients(s), s)
    }

    /// |φ*⁺ − ρ*⁻¹G*φ*⁻| at real ξ.
    pub fn wh_equation_residual(&self, xi: f64, s: f64) -> Result<f64> {
        let x = Complex64::from(xi);
        let p = self.plus(x, s)?;
        let m = self.minus(x, s)?;
        let g = self.ctx.g_star_over_rho(x, s);
        let mut r = 0.0;
        for i in 0..3 {
            let gm: Complex64 = (0..3).map(|k| g[(i, k)] * m[k]).sum();
            r += (p[i] - gm).norm_sqr();
        }
        Ok(r.sqrt())
    }
}

pub fn coefficients(j: WeightIndex, ctx: &KernelContext, s: f64) -> [Complex64; 6] {
    let (ds, es, a, m) = (ctx.ds, ctx.es, ctx.a, ctx.m_minus);
    let z = Complex64::new(0.0, 0.0);
    match j {
        WeightIndex::W1 => [Complex64::from(1.0 / (1.0 + es)), z, z, z, z, -2.0 * I * ds * m * s],
        WeightIndex::W2 => [z, -I * ds * m * m * s, ds * m, z, z, z],
        WeightIndex::W3 => [z, z, z, -I * m, m / ds, -m / (ds * (I - a))],
    }
}

pub fn conditions(ctx: &KernelContext, c: &[Complex64; 6], s: f64) -> [Complex64; 3] {
    let (ds, es, a, m) = (ctx.ds, ctx.es, ctx.a, ctx.m_minus);
    [
        (1.0 + es) * s * c[0] - I / (2.0 * ds * m) * (c[4] / (I - a) + c[5]),
        c[1] + I * s * m * c[2],
        I * c[3] - ds * c[4],
    ]
}

fn plus_components(j: WeightIndex, ctx: &KernelContext, k: &PlusKernel, s: f64) -> C3 {
    let (ds, es, a, d0) = (ctx.ds, ctx.es, ctx.a, ctx.d0);
    let (xi, f1, f2) = (k.xi, k.f1, k.f2);
    let r2 = xi * xi + 1.0;
    let up = |al: f64| pow_branch(xi + I, al.into(), HalfPlane::Upper);
    match j {
        WeightIndex::W1 => {
            let h = up(-0.5);
            let p3 = s * (1.0 / (xi - I) - 2.0 * xi * f1) * h;
            let p1 = 2.0 * s * f2 * h;
            let p2 = -(xi / (xi - I) + 2.0 * f1) * h;
            [p1, p2, p3]
        }
        WeightIndex::W2 => {
            let c = (1.0 + es) / (2.0 * d0 * d0 * ds * (I - a));
            let h = up(-1.5);
            let p3 = (c + I * xi * f2) * h;
            let p1 = I * r2 * f1 * h;
            let p2 = -s * (c * xi - I * f2) * h;
            [p1, p2, p3]
        }
        WeightIndex::W3 => {
            let kk = I * (I - xi) / (ds * (I - a));
            let h = up(-0.5) / (ds * (xi - a));
            let p3 = xi * (f2 - kk * f1) * h;
            let p1 = (r2 * f1 + kk * f2) * h;
            let p2 = s * (f2 - kk * f1) * h;
            [p1, p2, p3]
        }
    }
}

fn minus_components(j: WeightIndex, ctx: &KernelContext, k: &MinusKernel, s: f64) -> C3 {
    let (ds, es, a, d0) = (ctx.ds, ctx.es, ctx.a, ctx.d0);
    let (xi, p1, p2) = (k.xi, k.p1, k.p2);
    let r2 = xi * xi + 1.0;
    let lo = pow_branch(xi - I, 0.5.into(), HalfPlane::Lower);
    match j {
        WeightIndex::W1 => {
            let m3 = -s * (1.0 / ((1.0 + es) * (xi - I)) + 2.0 * I * ds * xi * p1) * lo;
            let m1 = -2.0 * I * ds * s * p2 * lo;
            let m2 = (xi / ((1.0 + es) * (xi - I)) - 2.0 * I * ds * p1) * lo;
            [m1, m2, m3]
        }
        WeightIndex::W2 => {
            let q = 1.0 / (2.0 * d0 * d0 * ds * (I - a));
            let h = lo / (xi + I);
            let m3 = (-q + ds * xi * p2) * h;
            let m1 = -ds * r2 * p1 * h;
            let m2 = s * (q * xi + ds * p2) * h;
            [m1, m2, m3]
        }
        WeightIndex::W3 => {
            let xa = xi - a;
            let ia = ds * (I - a);
            let m3 = (-I * xi * p2 / xa + xi * p1 / (ds * xa) - xi * p1 / ia) * lo;
            let m1 = (I * r2 * p1 / xa + p2 / (ds * xa) - p2 / ia) * lo;
            let m2 = s * (-I * p2 / xa + p1 / (ds * xa) - p1 / ia) * lo;
            [m1, m2, m3]
        }
    }
}

/// Physical-order components (U₁, U₂, U₃, Σ₁₂, Σ₂₂, Σ₃₂).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SixComponents {
    pub u: C3,
    pub sigma: C3,
}

impl SixComponents {
    pub fn as_array(&self) -> [Complex64; 6] {
        [self.u[0], self.u[1], self.u[2], self.sigma[0], self.sigma[1], self.sigma[2]]
    }
}

/// Exact transforms at real ξ in physical order.
pub fn exact_eval(j: WeightIndex, xi: f64, s: f64, ctx: &KernelContext) -> Result<SixComponents> {
    let w = make_weight_function(j, ctx);
    let x = Complex64::from(xi);
    Ok(SixComponents { u: to_physical(w.plus(x, s)?), sigma: to_physical(w.minus(x, s)?) })
}

/// Leading-term building blocks of the large-ξ expansions at real ξ > 0.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticCoefficients {
    pub e0: f64,
    pub big_d: Complex64,
    pub b0: Complex64,
    pub c_plus: Complex64,
    pub s_plus: Complex64,
    pub c_minus: Complex64,
    pub s_minus: Complex64,
    pub f10: Complex64,
    pub f11: Complex64,
    pub f20: Complex64,
    pub f21: Complex64,
    pub p10: Complex64,
    pub p11: Complex64,
    pub p20: Complex64,
    pub p21: Complex64,
}

/// Which set of second-order coefficients to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    /// Coefficients including the i/(2d*ξ) part of B*± and the extra terms
    /// listed in [`asymptotic_eval`].
    Corrected,
    /// F₁₁, F₂₁, P₁₁, P₂₁ exactly as printed, single-term U₃, Σ₃₂ for j = 3.
    Printed,
}

pub fn asymptotic_coefficients(xi: f64, ctx: &KernelContext, which: Expansion) -> AsymptoticCoefficients {
    let (ds, a, d0) = (ctx.ds, ctx.a, ctx.d0);
    let eps = ctx.d1 / (2.0 * PI);
    let e0 = (PI * eps / 2.0).exp();
    let big_d = Complex64::new(0.0, eps * 2f64.ln()).exp()
        * (2f64.sqrt() / 2.0)
        * Complex64::new(1.0, 1.0)
        * ((1.0 - a * ds) / ds).sqrt();
    let b0 = Complex64::new(PI / 4.0, -0.5 * ((1.0 - a * ds) / ds).ln());
    let xe = Complex64::new(0.0, eps * xi.ln()).exp();
    let u = e0 * big_d * xe;
    let v = big_d * xe / e0;
    let c_plus = (u + 1.0 / u) / 2.0;
    let s_plus = -I / 2.0 * (u - 1.0 / u);
    let c_minus = (v + 1.0 / v) / 2.0;
    let s_minus = -I / 2.0 * (v - 1.0 / v);
    let q = ((1.0 - I * a) / 2.0).sqrt();
    let qd = q / (d0 * d0);
    let mut f11 = q * (c_plus - I / 2.0 * ds * (I - a) * s_plus);
    let mut f21 = q * (s_plus + I / 2.0 * ds * (I - a) * c_plus);
    let mut p11 = qd * (I - a) / 2.0 * s_minus;
    let mut p21 = qd * (I - a) / 2.0 * c_minus;
    if which == Expansion::Corrected {
        f11 -= q * c_plus / 2.0;
        f21 -= q * s_plus / 2.0;
        p11 += qd * I / (2.0 * ds) * c_minus;
        p21 -= qd * I / (2.0 * ds) * s_minus;
    }
    AsymptoticCoefficients {
        e0,
        big_d,
        b0,
        c_plus,
        s_plus,
        c_minus,
        s_minus,
        f10: q * (-I * ds * s_plus),
        f11,
        f20: q * (I * ds * c_plus),
        f21,
        p10: qd * s_minus,
        p11,
        p20: qd * c_minus,
        p21,
    }
}

/// Two-term large-ξ approximations of all six components, physical order.
///
/// With `Expansion::Corrected`, components whose printed expansion stops at
/// a single term (U₃, Σ₃₂ of j = 3) get their second term, and U₃, Σ₃₂ of
/// j = 2, whose leading term is a pure constant, carry the ξ⁻² term that
/// follows from F₂₁, P₂₁.
pub fn asymptotic_eval(j: WeightIndex, xi: f64, s: f64, ctx: &KernelContext, which: Expansion) -> SixComponents {
    asymptotic_impl(j, xi, s, ctx, which, false)
}

fn asymptotic_impl(
    j: WeightIndex,
    xi: f64,
    s: f64,
    ctx: &KernelContext,
    which: Expansion,
    leading_only: bool,
) -> SixComponents {
    let k = asymptotic_coefficients(xi, ctx, which);
    let (ds, es, a, d0) = (ctx.ds, ctx.es, ctx.a, ctx.d0);
    let corr = which == Expansion::Corrected;
    let (f10, f11, f20, f21) = (k.f10, k.f11, k.f20, k.f21);
    let (p10, p11, p20, p21) = (k.p10, k.p11, k.p20, k.p21);
    let r = 1.0 / xi;
    let rc = if leading_only { 0.0 } else { r };
    let xm = xi.powf(-0.5);
    let xp = xi.sqrt();
    match j {
        WeightIndex::W1 => {
            let u1 = s * xm * (-2.0 * f10 + rc * (1.0 - 2.0 * f11 + I * f10));
            let u2 = s * xm * (2.0 * f20 + rc * (2.0 * f21 - I * f20));
            let u3 = -xm * (1.0 + rc * (I / 2.0 + 2.0 * f10));
            let s12 = -s * xp * (2.0 * I * ds * p10 + rc * (1.0 / (1.0 + es) + 2.0 * I * ds * p11 + ds * p10));
            let s22 = -s * xp * (2.0 * I * ds * p20 + rc * (2.0 * I * ds * p21 + ds * p20));
            let s32 = xp * (1.0 / (1.0 + es) + rc * (I / (2.0 * (1.0 + es)) - 2.0 * I * ds * p10));
            SixComponents { u: [u1, u2, u3], sigma: [s12, s22, s32] }
        }
        WeightIndex::W2 => {
            let kc = (1.0 + es) / (2.0 * d0 * d0 * ds * (I - a));
            let k2 = 1.0 / (2.0 * d0 * d0 * ds * (I - a));
            let u1 = xm * (I * f20 + rc * (kc + I * f21 + 1.5 * f20));
            let u2 = xm * (I * f10 + rc * (I * f11 + 1.5 * f10));
            let mut u3 = s * xm * (-kc + rc * (I * f20 + 1.5 * I * kc));
            let s12 = xp * (ds * p20 + rc * (-k2 + ds * p21 - 1.5 * I * ds * p20));
            let s22 = xp * (-ds * p10 + rc * (-ds * p11 + 1.5 * I * ds * p10));
            let mut s32 = s * xp * (k2 + rc * (ds * p20 - 3.0 * I / (4.0 * d0 * d0 * ds * (I - a))));
            if corr {
                u3 += s * xm * r * rc * (I * f21 + 1.5 * f20 + 1.875 * kc);
                s32 += s * xp * r * rc * (ds * p21 - 1.5 * I * ds * p20 - 1.375 * k2);
            }
            SixComponents { u: [u1, u2, u3], sigma: [s12, s22, s32] }
        }
        WeightIndex::W3 => {
            let m = 1.0 / (ds * (I - a));
            let u1 = xm / ds
                * (f20 + I * m * f10 + rc * (f21 + I * m * f11 + (a - I / 2.0) * f20 + (1.5 + I * a) * m * f10));
            let u2 = xm / ds
                * (f10 - I * m * f20 + rc * (f11 - I * m * f21 + (a - I / 2.0) * f10 - (1.5 + I * a) * m * f20));
            let lead_u3 = f20 + I * m * f10;
            let u3 = if corr {
                s * xm * r / ds
                    * (lead_u3 + rc * (f21 + I * m * f11 + m * f10 + (a - I / 2.0) * lead_u3))
            } else {
                s * xm * r / ds * lead_u3
            };
            let s12 = xp
                * (-I * p20 - m * p10
                    + rc * (-I * p21 - (0.5 + I * a) * p20 - m * p11 - (2.0 * a - 3.0 * I) / 2.0 * m * p10));
            let s22 = xp
                * (I * p10 - m * p20
                    + rc * (I * p11 + (0.5 + I * a) * p10 - m * p21 - (2.0 * a - 3.0 * I) / 2.0 * m * p20));
            let lead_s32 = -I * p20 - m * p10;
            let s32 = if corr {
                s * xm
                    * (lead_s32
                        + rc * (-I * p21 - m * p11 - I * a * p20 + p10 / ds - p20 / 2.0 + I / 2.0 * m * p10))
            } else {
                s * xm * lead_s32
            };
            SixComponents { u: [u1, u2, u3], sigma: [s12, s22, s32] }
        }
    }
}

/// Leading terms only, for checking the ordering of the expansion.
pub fn asymptotic_leading(j: WeightIndex, xi: f64, s: f64, ctx: &KernelContext) -> SixComponents {
    asymptotic_impl(j, xi, s, ctx, Expansion::Printed, true)
}

/// F₃₃⁺(ξ) = −i√|λ| Σⱼ B̃₃ⱼ(λ)[Ū*₃ʲ]⁺(ξ, λ), checked to be λ-independent.
pub fn f33_plus(xi: Complex64, ctx: &KernelContext, cm: &CouplingMatrices) -> Result<Complex64> {
    let k = ctx.plus_kernel(xi)?;
    f33_from_kernel(&k, ctx, cm)
}

pub(crate) fn f33_from_kernel(k: &PlusKernel, ctx: &KernelContext, cm: &CouplingMatrices) -> Result<Complex64> {
    let mut vals = [Complex64::new(0.0, 0.0); 4];
    for (slot, lam) in [1.0f64, -1.0, 2.0, -2.0].into_iter().enumerate() {
        let s = lam.signum();
        let bt = cm.b_tilde(lam);
        let mut tot = Complex64::new(0.0, 0.0);
        for (jj, j) in WeightIndex::ALL.into_iter().enumerate() {
            let u3 = plus_components(j, ctx, k, s)[1];
            tot += bt[(2, jj)] * u3;
        }
        vals[slot] = -I * f64::sqrt(lam.abs()) * tot;
    }
    let spread = vals.iter().map(|v| (v - vals[0]).norm()).fold(0.0, f64::max);
    if spread > 1e-10 * vals[0].norm().max(1.0) {
        return Err(Error::LambdaDependenceDetected(spread));
    }
    Ok(vals[0])
}

/// γ₃₃ = (2/π)(3(1+e*) − √(1−d*²))/(√(1−d*²) + 1 + e*).
pub fn gamma33(ctx: &KernelContext) -> f64 {
    let (ds, es) = (ctx.ds, ctx.es);
    let r = (1.0 - ds * ds).sqrt();
    2.0 / PI * (3.0 * (1.0 + es) - r) / (r + 1.0 + es)
}

/// Power q of the leading term, |component| ~ ξ^q, physical order.
pub fn leading_power(j: WeightIndex) -> [f64; 6] {
    match j {
        WeightIndex::W1 | WeightIndex::W2 => [-0.5, -0.5, -0.5, 0.5, 0.5, 0.5],
        WeightIndex::W3 => [-0.5, -0.5, -1.5, 0.5, 0.5, -0.5],
    }
}

/// Decay exponent p of the correction beyond the two-term expansion,
/// exact − asymptotic ≈ ξ^{q−p} Σₖ (cₖ + dₖ log ξ) ξ^{ikε} (k = −2..2),
/// with q the nominal leading power. The cₖ, dₖ are solved by linear least
/// squares for each trial p and p minimizes the residual. A plain log-log
/// slope is biased here: the ξ^{±iε} beats have periods comparable to the
/// fitted range and the next term carries a log ξ. One value per
/// component, physical order.
pub fn correction_decay_exponents(
    j: WeightIndex,
    s: f64,
    ctx: &KernelContext,
    which: Expansion,
    xi_lo: f64,
    xi_hi: f64,
    n: usize,
) -> Result<[f64; 6]> {
    if !(xi_lo > 0.0 && xi_hi > xi_lo) || n < 24 {
        return Err(Error::InvalidArgument("decay fit needs 0 < xi_lo < xi_hi and n >= 24".into()));
    }
    let q = leading_power(j);
    let eps = ctx.constants.epsilon;
    let mut xs = Vec::with_capacity(n);
    let mut res = vec![Vec::with_capacity(n); 6];
    for k in 0..n {
        let xi = xi_lo * (xi_hi / xi_lo).powf(k as f64 / (n - 1) as f64);
        let ex = exact_eval(j, xi, s, ctx)?.as_array();
        let asy = asymptotic_eval(j, xi, s, ctx, which).as_array();
        xs.push(xi);
        for c in 0..6 {
            res[c].push((ex[c] - asy[c]) * xi.powf(-q[c]));
        }
    }
    let beats: Vec<Vec<Complex64>> = xs
        .iter()
        .map(|&x| {
            let b: Vec<Complex64> = (-2..=2).map(|k| Complex64::new(0.0, k as f64 * eps * x.ln()).exp()).collect();
            b.iter().copied().chain(b.iter().map(|v| v * x.ln())).collect()
        })
        .collect();
    // relative misfit of the model at trial exponent p
    let misfit = |c: usize, p: f64| -> f64 {
        let scale: Vec<f64> = xs.iter().map(|&x| x.powf(-p)).collect();
        let a = nalgebra::DMatrix::from_fn(n, 10, |i, k| beats[i][k] * scale[i]);
        let b = nalgebra::DVector::from_iterator(n, res[c].iter().copied());
        let Ok(sol) = a.clone().svd(true, true).solve(&b, 1e-12) else { return f64::INFINITY };
        ((a * sol) - &b).norm() / b.norm()
    };
    Ok(std::array::from_fn(|c| {
        // coarse scan, then golden section around the best point
        let grid: Vec<f64> = (0..=40).map(|k| 0.1 * k as f64).collect();
        let best = grid.iter().copied().min_by(|x, y| misfit(c, *x).total_cmp(&misfit(c, *y))).unwrap_or(0.0);
        let (mut lo, mut hi) = ((best - 0.1).max(0.0), best + 0.1);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..40 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if misfit(c, m1) < misfit(c, m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        0.5 * (lo + hi)
    }))
}
