//! Matrix Wiener–Hopf factorization of the kernel ρ*⁻¹G*.
//!
//! Y*⁺ is analytic in the upper half-plane, Y*⁻ in the lower, and
//! Y*⁺⁻¹Y*⁻ = ρ*⁻¹G* on the real line. Everything here is built from the
//! scalar functions ψ*±, B₁±, B*±, Σ*₁,₂⁺ and Λ*±.

use crate::bimaterial::{BimaterialConstants, DEGENERATE_DSTAR};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::special_functions::{pow_branch, HalfPlane};
use nalgebra::Matrix3;
use num_complex::Complex64;
use std::f64::consts::PI;

pub type CMat3 = Matrix3<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Truncation of the B₁ integral in u = asinh t. The integrand decays like
/// |u|e^{−|u|}, so the neglected tail is below 1e−15.
const U_MAX: f64 = 40.0;
/// Vertical offset of the shifted integration lines.
const SHIFT: f64 = 0.6;
/// Beyond this |Im asinh ξ| the pole is far enough from the real axis to
/// integrate there directly.
const DIRECT_OFFSET: f64 = 0.3;

#[derive(Debug, Clone)]
pub struct KernelContext {
    pub constants: BimaterialConstants,
    pub quad_abs_tol: f64,
    /// Truncation T of the t-integral; stored as asinh T.
    pub contour_truncation: f64,
    pub ds: f64,
    pub es: f64,
    pub a: f64,
    pub d0: f64,
    pub d1: f64,
    pub m_minus: Complex64,
    ua: f64,
}

impl KernelContext {
    pub fn new(constants: &BimaterialConstants) -> Result<Self> {
        Self::with_tolerance(constants, 1e-10)
    }

    pub fn with_tolerance(constants: &BimaterialConstants, quad_abs_tol: f64) -> Result<Self> {
        let (a, m) = match (constants.a, constants.m_minus) {
            (Some(a), Some(m)) if constants.d_star >= DEGENERATE_DSTAR => (a, m),
            _ => return Err(Error::DegenerateBimaterial(constants.d_star)),
        };
        if !(quad_abs_tol > 0.0) {
            return Err(Error::InvalidArgument("quad_abs_tol must be positive".into()));
        }
        Ok(KernelContext {
            constants: *constants,
            quad_abs_tol,
            contour_truncation: U_MAX.sinh(),
            ds: constants.d_star,
            es: constants.e_star,
            a,
            d0: constants.d0,
            d1: constants.d1,
            m_minus: m,
            ua: a.abs().asinh(),
        })
    }

    /// A context built from (d*, e*) alone; b = 1 normalization.
    pub fn from_reduced(d_star: f64, e_star: f64) -> Result<Self> {
        let mut c = reduced_constants(d_star, e_star)?;
        c.pair.swapped = false;
        Self::new(&c)
    }

    fn tol(&self) -> Tolerance {
        Tolerance { abs: self.quad_abs_tol * 1e-3, rel: 1e-13, max_segments: 4000 }
    }
}

/// Constants for b = 1, d = d*, e = e*; only d*, e* matter for the kernel.
pub fn reduced_constants(d_star: f64, e_star: f64) -> Result<BimaterialConstants> {
    if !(0.0..1.0).contains(&d_star) || e_star < 0.0 {
        return Err(Error::InvalidArgument(format!("d* = {d_star}, e* = {e_star}")));
    }
    let b = 1.0;
    let (d, e) = (d_star, e_star);
    let epsilon = ((b + d) / (b - d)).ln() / (2.0 * PI);
    let a = -(1.0 - d * d).sqrt() / d;
    let d0 = (1.0 - d * d).powf(0.25);
    let ratio = (1.0 - a * d) / d;
    let degenerate = d_star < DEGENERATE_DSTAR;
    Ok(BimaterialConstants {
        pair: crate::bimaterial::MaterialPair {
            nu_plus: f64::NAN,
            mu_plus: f64::NAN,
            nu_minus: f64::NAN,
            mu_minus: f64::NAN,
            swapped: false,
        },
        b,
        d,
        e,
        epsilon,
        epsilon_moduli: epsilon,
        d_star,
        e_star,
        d0,
        d1: ((1.0 + d) / (1.0 - d)).ln(),
        e0: (PI * epsilon / 2.0).exp(),
        nu_composite: (d * d + b * e) / (b * (b + e)),
        eta: f64::NAN,
        a: (!degenerate).then_some(a),
        m_minus: (!degenerate).then(|| ((1.0 - I * a) / 2.0).sqrt() / d0),
        big_d: (!degenerate).then(|| {
            Complex64::new(0.0, epsilon * 2f64.ln()).exp()
                * (2f64.sqrt() / 2.0)
                * Complex64::new(1.0, 1.0)
                * ratio.sqrt()
        }),
        b0: (!degenerate).then(|| Complex64::new(PI / 4.0, -0.5 * ratio.ln())),
    })
}

/// ρ*(ξ) = √(ξ²+1), principal branch (positive on the real axis).
pub fn rho(xi: Complex64) -> Complex64 {
    (xi * xi + 1.0).sqrt()
}

fn check_side(xi: Complex64, hp: HalfPlane) -> Result<()> {
    if xi.im * hp.sign() < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "xi = {xi} outside the closed {hp:?} half-plane"
        )));
    }
    Ok(())
}

/// ψ*±(ξ) = (i/(πρ*)) log((ξ+ρ*)/(±i)).
pub fn psi_star(xi: Complex64, hp: HalfPlane, _ctx: &KernelContext) -> Result<Complex64> {
    check_side(xi, hp)?;
    Ok(rho_psi(xi, hp) / rho(xi))
}

/// ρ*ψ*±, which is what B*± actually needs.
fn rho_psi(xi: Complex64, hp: HalfPlane) -> Complex64 {
    let r = rho(xi);
    // ξ + ρ cancels for large negative ξ; use 1/(ρ − ξ) there
    let w = if xi.re < 0.0 { 1.0 / (r - xi) } else { xi + r };
    let l = w.ln() - Complex64::new(0.0, hp.sign() * PI / 2.0);
    I / PI * l
}

impl KernelContext {
    /// The three pieces of L = P − S₁ − S₂ in the u = asinh t variable.
    fn piece_p(&self, u: Complex64) -> Complex64 {
        (self.ds * u.cosh() + 1.0).ln() - (2.0 * self.ds).ln()
    }
    fn piece_s1(&self, u: Complex64) -> Complex64 {
        ((u - self.ua) * 0.5).sinh().ln()
    }
    fn piece_s2(&self, u: Complex64) -> Complex64 {
        ((u + self.ua) * 0.5).sinh().ln()
    }

    /// L(u) on the real axis: log|(d*cosh u+1)/(d*cosh u−1)| − iπ on |u| < u_a.
    fn l_real(&self, u: f64) -> Complex64 {
        let x = self.ds * u.cosh();
        let v = ((x + 1.0) / (x - 1.0)).abs().ln();
        if u.abs() < self.ua {
            Complex64::new(v, -PI)
        } else {
            Complex64::from(v)
        }
    }

    fn line_integral<F: Fn(Complex64) -> Complex64>(
        &self,
        f: F,
        shift: f64,
        xi: Complex64,
    ) -> Result<Complex64> {
        let ua = self.ua;
        integrate(
            |x| {
                let u = Complex64::new(x, shift);
                f(u) / (u.sinh() - xi)
            },
            &[-U_MAX, -ua, 0.0, ua, U_MAX],
            self.tol(),
        )
    }

    /// B₁±(ξ) = −(1/4π)∫_Γ log[(d*ρ(t)+1)/(d*ρ(t)−1)] dt/(ρ(t)(t−ξ)).
    ///
    /// With t = sinh u the integral is ∫L(u)du/(sinh u − ξ). L is split into
    /// a piece analytic near the real axis and two logarithms analytic in
    /// opposite strips; each is integrated on a line shifted away from its
    /// singularities, picking up the residue at u₀ = asinh ξ when the shift
    /// crosses it.
    pub fn b1_contour_integral(&self, xi: Complex64, hp: HalfPlane) -> Result<Complex64> {
        check_side(xi, hp)?;
        let u0 = xi.asinh();
        if u0.im.abs() > DIRECT_OFFSET {
            let v = integrate(
                |x| self.l_real(x) / (Complex64::from(x.sinh()) - xi),
                &[-U_MAX, -self.ua, 0.0, self.ua, U_MAX],
                self.tol(),
            )?;
            return Ok(-v / (4.0 * PI));
        }
        let real = xi.im == 0.0;
        if real && (xi.re.abs() - self.a.abs()).abs() < 1e-14 * self.a.abs() {
            return Err(Error::PoleOnContour(xi.re));
        }
        let c0 = u0.cosh();
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        let (ip, is1, is2) = match hp {
            HalfPlane::Upper => {
                let ip = self.line_integral(|u| self.piece_p(u), -SHIFT, xi)?;
                let is2 = self.line_integral(|u| self.piece_s2(u), -SHIFT, xi)?;
                let s1 = if real {
                    // upper boundary value of log sinh((u−u_a)/2)
                    let w = ((u0.re - self.ua) * 0.5).sinh();
                    Complex64::new(w.abs().ln(), if w < 0.0 { PI } else { 0.0 })
                } else {
                    self.piece_s1(u0)
                };
                let is1 = self.line_integral(|u| self.piece_s1(u), SHIFT, xi)? + two_pi_i * s1 / c0;
                (ip, is1, is2)
            }
            HalfPlane::Lower => {
                let is1 = self.line_integral(|u| self.piece_s1(u), SHIFT, xi)?;
                let ip = self.line_integral(|u| self.piece_p(u), -SHIFT, xi)?
                    - two_pi_i * self.piece_p(u0) / c0;
                let s2 = if real {
                    let w = ((u0.re + self.ua) * 0.5).sinh();
                    Complex64::new(w.abs().ln(), if w < 0.0 { -PI } else { 0.0 })
                } else {
                    self.piece_s2(u0)
                };
                let is2 = self.line_integral(|u| self.piece_s2(u), -SHIFT, xi)? - two_pi_i * s2 / c0;
                (ip, is1, is2)
            }
        };
        Ok(-(ip - is1 - is2) / (4.0 * PI))
    }

    /// B*±(ξ) = ρ*[(d₁/2i)ψ*± + B₁±].
    pub fn b_star(&self, xi: Complex64, hp: HalfPlane) -> Result<Complex64> {
        let b1 = self.b1_contour_integral(xi, hp)?;
        Ok(self.d1 / (2.0 * I) * rho_psi(xi, hp) + rho(xi) * b1)
    }

    /// Σ*₁⁺, Σ*₂⁺ and Λ*⁺ at ξ, given B*⁺(ξ).
    pub fn plus_factors(&self, xi: Complex64) -> Result<PlusFactors> {
        let bp = self.b_star(xi, HalfPlane::Upper)?;
        let r = rho(xi);
        let ds = self.ds;
        let (sb, cb) = (bp.sin(), bp.cos());
        let sigma1 = I * ds * (cb - I * ds * r * sb);
        let sigma2 = I * ds * (sb / r + I * ds * cb);
        let lambda = self.d0 * pow_branch(xi + I, 0.5.into(), HalfPlane::Upper)
            / pow_branch(xi + self.a, 0.5.into(), HalfPlane::Upper);
        Ok(PlusFactors { b_star: bp, sigma1, sigma2, lambda })
    }

    /// cos B*⁻, sin B*⁻ and Λ*⁻ at ξ.
    pub fn minus_factors(&self, xi: Complex64) -> Result<MinusFactors> {
        let bm = self.b_star(xi, HalfPlane::Lower)?;
        let lambda = pow_branch(xi - self.a, 0.5.into(), HalfPlane::Lower)
            / (self.d0 * pow_branch(xi - I, 0.5.into(), HalfPlane::Lower));
        Ok(MinusFactors { b_star: bm, cos: bm.cos(), sin: bm.sin(), lambda })
    }

    pub fn y_plus(&self, xi: Complex64, s: f64) -> Result<(CMat3, CMat3)> {
        let f = self.plus_factors(xi)?;
        Ok((self.y_plus_from(xi, s, &f), self.y_plus_inv_from(xi, s, &f)))
    }

    pub fn y_minus(&self, xi: Complex64, s: f64) -> Result<(CMat3, CMat3)> {
        let f = self.minus_factors(xi)?;
        Ok((self.y_minus_from(xi, s, &f), self.y_minus_inv_from(xi, s, &f)))
    }

    fn y_plus_from(&self, xi: Complex64, s: f64, f: &PlusFactors) -> CMat3 {
        let r2 = xi * xi + 1.0;
        let es1 = 1.0 + self.es;
        let k = self.constants.delta_star(xi) * f.lambda;
        let (s1, s2) = (f.sigma1, f.sigma2);
        let z = Complex64::new(0.0, 0.0);
        let h = pow_branch(xi + I, 0.5.into(), HalfPlane::Upper);
        CMat3::new(
            z,
            -xi / (es1 * r2),
            s / (es1 * r2),
            s1 / k,
            s * s2 / k,
            xi * s2 / k,
            r2 * s2 / k,
            -s * s1 / k,
            -xi * s1 / k,
        ) * h
    }

    fn y_plus_inv_from(&self, xi: Complex64, s: f64, f: &PlusFactors) -> CMat3 {
        let r2 = xi * xi + 1.0;
        let es1 = 1.0 + self.es;
        let d2 = self.ds * self.ds;
        let ls1 = f.lambda * f.sigma1 / d2;
        let ls2 = f.lambda * f.sigma2 / d2;
        let z = Complex64::new(0.0, 0.0);
        let h = pow_branch(xi + I, (-0.5).into(), HalfPlane::Upper);
        CMat3::new(
            z,
            ls1,
            ls2,
            -es1 * xi,
            s * ls2,
            -s * ls1 / r2,
            Complex64::from(es1 * s),
            xi * ls2,
            -xi * ls1 / r2,
        ) * h
    }

    fn y_minus_from(&self, xi: Complex64, s: f64, f: &MinusFactors) -> CMat3 {
        let r = rho(xi);
        let r2 = xi * xi + 1.0;
        let l = f.lambda;
        let z = Complex64::new(0.0, 0.0);
        let h = pow_branch(xi - I, (-0.5).into(), HalfPlane::Lower);
        CMat3::new(
            z,
            xi / r2,
            -s / r2,
            -f.sin / (r * l),
            s * f.cos / (r2 * l),
            xi * f.cos / (r2 * l),
            f.cos / l,
            s * f.sin / (r * l),
            xi * f.sin / (r * l),
        ) * h
    }

    fn y_minus_inv_from(&self, xi: Complex64, s: f64, f: &MinusFactors) -> CMat3 {
        let r = rho(xi);
        let l = f.lambda;
        let z = Complex64::new(0.0, 0.0);
        let h = pow_branch(xi - I, 0.5.into(), HalfPlane::Lower);
        CMat3::new(
            z,
            -r * l * f.sin,
            l * f.cos,
            xi,
            s * l * f.cos,
            s * l * f.sin / r,
            Complex64::from(-s),
            xi * l * f.cos,
            xi * l * f.sin / r,
        ) * h
    }

    /// All four factor matrices at a real ξ.
    pub fn y_matrices(&self, xi: f64, s: f64) -> Result<MatrixPair> {
        let x = Complex64::from(xi);
        let fp = self.plus_factors(x)?;
        let fm = self.minus_factors(x)?;
        Ok(MatrixPair {
            y_plus: self.y_plus_from(x, s, &fp),
            y_minus: self.y_minus_from(x, s, &fm),
            y_plus_inv: self.y_plus_inv_from(x, s, &fp),
            y_minus_inv: self.y_minus_inv_from(x, s, &fm),
        })
    }

    /// ρ*⁻¹G*(ξ, sign λ), built directly from the kernel.
    pub fn g_star_over_rho(&self, xi: Complex64, s: f64) -> CMat3 {
        let r = rho(xi);
        let r2 = xi * xi + 1.0;
        let (ds, es) = (self.ds, self.es);
        let g = CMat3::new(
            r2,
            I * ds * s * r,
            I * ds * xi * r,
            -I * ds * s * r,
            r2 + es * xi * xi,
            -es * xi * s,
            -I * ds * xi * r,
            -es * xi * s,
            r2 + es,
        );
        g * (-1.0 / (r2 * r))
    }

    /// Largest ‖Y*⁺⁻¹Y*⁻ − ρ*⁻¹G*‖_F over the grid.
    pub fn wh_residual(&self, xi_grid: &[f64], sign_lambda: f64) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &xi in xi_grid {
            let m = self.y_matrices(xi, sign_lambda)?;
            let g = self.g_star_over_rho(xi.into(), sign_lambda);
            worst = worst.max((m.y_plus_inv * m.y_minus - g).norm());
        }
        Ok(worst)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PlusFactors {
    pub b_star: Complex64,
    pub sigma1: Complex64,
    pub sigma2: Complex64,
    pub lambda: Complex64,
}

#[derive(Debug, Clone, Copy)]
pub struct MinusFactors {
    pub b_star: Complex64,
    pub cos: Complex64,
    pub sin: Complex64,
    pub lambda: Complex64,
}

#[derive(Debug, Clone, Copy)]
pub struct MatrixPair {
    pub y_plus: CMat3,
    pub y_minus: CMat3,
    pub y_plus_inv: CMat3,
    pub y_minus_inv: CMat3,
}

/// Standalone wrapper used by callers that hold only a context.
pub fn b1_contour_integral(xi: Complex64, hp: HalfPlane, ctx: &KernelContext) -> Result<Complex64> {
    ctx.b1_contour_integral(xi, hp)
}

pub fn b_star(xi: Complex64, hp: HalfPlane, ctx: &KernelContext) -> Result<Complex64> {
    ctx.b_star(xi, hp)
}

pub fn wh_residual(ctx: &KernelContext, xi_grid: &[f64], sign_lambda: f64) -> Result<f64> {
    ctx.wh_residual(xi_grid, sign_lambda)
}

/// (1/2π)∫₀^∞ log|(d*ρ+1)/(d*ρ−1)| dt/ρ, which should equal π/4.
pub fn quarter_pi_integral(d_star: f64) -> Result<f64> {
    let ua = ((1.0 - d_star * d_star).sqrt() / d_star).asinh();
    let v = integrate(
        |u| {
            let x = d_star * u.cosh();
            Complex64::from(((x + 1.0) / (x - 1.0)).abs().ln())
        },
        &[0.0, ua, U_MAX],
        Tolerance { abs: 1e-15, rel: 1e-14, max_segments: 4000 },
    )?;
    Ok(v.re / (2.0 * PI))
}
