//! C ABI over the llcrack library.
//!
//! Handles are opaque and owned by the caller: every `*_new` has a matching
//! `*_free`. Functions return an [`LlStatus`]; on failure the message is
//! kept per thread and can be read with [`ll_last_error`].

use llcrack::bimaterial::{derive_constants, BimaterialConstants, MaterialPair};
use llcrack::error::Error;
use llcrack::ll_constants::{asymptotic_constants, exact_constants, gamma_via_inversion, LLConstants};
use llcrack::sif_perturbation::{perturb_front, FrontBaseline, KernelSettings, WeightKernel};
use llcrack::weight_functions::{exact_eval, WeightIndex};
use llcrack::wiener_hopf::KernelContext;
use num_complex::Complex64;
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidMaterial = 3,
    DegenerateBimaterial = 4,
    GammaPole = 5,
    BranchCut = 6,
    PoleOnContour = 7,
    QuadratureNonConvergence = 8,
    LambdaDependence = 9,
    ExtrapolationUnstable = 10,
    LoadDecayTooSlow = 11,
    NonRealOutput = 12,
    Panic = 99,
}

impl From<&Error> for LlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidMaterial(_) => LlStatus::InvalidMaterial,
            Error::DegenerateBimaterial(_) => LlStatus::DegenerateBimaterial,
            Error::PoleAtNonPositiveInteger(_) => LlStatus::GammaPole,
            Error::OnBranchCut { .. } => LlStatus::BranchCut,
            Error::PoleOnContour(_) => LlStatus::PoleOnContour,
            Error::QuadratureNonConvergence(_) => LlStatus::QuadratureNonConvergence,
            Error::LambdaDependenceDetected(_) => LlStatus::LambdaDependence,
            Error::ExtrapolationUnstable(_) => LlStatus::ExtrapolationUnstable,
            Error::LoadDecayTooSlow(_) => LlStatus::LoadDecayTooSlow,
            Error::NonRealOutput(_) => LlStatus::NonRealOutput,
            Error::InvalidArgument(_) => LlStatus::InvalidArgument,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), LlStatus>>(f: F) -> LlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LlStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            LlStatus::Panic
        }
    }
}

fn fail(e: Error) -> LlStatus {
    let s = LlStatus::from(&e);
    set_error(e.to_string());
    s
}

fn null() -> LlStatus {
    set_error("null pointer argument".into());
    LlStatus::NullPointer
}

fn bad(msg: &str) -> LlStatus {
    set_error(msg.into());
    LlStatus::InvalidArgument
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length, 0 if none.
#[no_mangle]
pub unsafe extern "C" fn ll_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// A complex number as two doubles.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LlComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for LlComplex {
    fn from(z: Complex64) -> Self {
        LlComplex { re: z.re, im: z.im }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LlScalars {
    pub b: f64,
    pub d: f64,
    pub e: f64,
    pub epsilon: f64,
    pub d_star: f64,
    pub e_star: f64,
    pub nu_composite: f64,
    pub eta: f64,
    /// 1 if the half-spaces were exchanged so that d >= 0.
    pub swapped: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LlConstants {
    pub gamma_plus: LlComplex,
    pub gamma_minus: LlComplex,
    pub gamma_iii: LlComplex,
    pub gamma_z: LlComplex,
    pub gamma: f64,
}

impl From<LLConstants> for LlConstants {
    fn from(k: LLConstants) -> Self {
        LlConstants {
            gamma_plus: k.gamma_plus.into(),
            gamma_minus: k.gamma_minus.into(),
            gamma_iii: k.gamma_iii.into(),
            gamma_z: k.gamma_z.into(),
            gamma: k.gamma,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LlBaseline {
    pub k: LlComplex,
    pub k_iii: f64,
    pub dk_da: LlComplex,
    pub dkiii_da: f64,
    pub delta: f64,
}

/// Material pair with its derived constants.
pub struct LlMaterial {
    constants: BimaterialConstants,
}

/// Precomputed h_kp kernels for one material pair.
pub struct LlKernel {
    inner: WeightKernel,
}

#[no_mangle]
pub unsafe extern "C" fn ll_material_new(
    nu_plus: f64,
    mu_plus: f64,
    nu_minus: f64,
    mu_minus: f64,
    out: *mut *mut LlMaterial,
) -> LlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = std::ptr::null_mut();
        let pair = MaterialPair::new(nu_plus, mu_plus, nu_minus, mu_minus).map_err(fail)?;
        let constants = derive_constants(&pair).map_err(fail)?;
        *out = Box::into_raw(Box::new(LlMaterial { constants }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ll_material_free(m: *mut LlMaterial) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

unsafe fn material<'a>(m: *const LlMaterial) -> Result<&'a BimaterialConstants, LlStatus> {
    m.as_ref().map(|m| &m.constants).ok_or_else(null)
}

#[no_mangle]
pub unsafe extern "C" fn ll_material_scalars(m: *const LlMaterial, out: *mut LlScalars) -> LlStatus {
    guard(|| {
        let c = material(m)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = LlScalars {
            b: c.b,
            d: c.d,
            e: c.e,
            epsilon: c.epsilon,
            d_star: c.d_star,
            e_star: c.e_star,
            nu_composite: c.nu_composite,
            eta: c.eta,
            swapped: c.pair.swapped as i32,
        };
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ll_constants_exact(m: *const LlMaterial, out: *mut LlConstants) -> LlStatus {
    guard(|| {
        let c = material(m)?;
        *out.as_mut().ok_or_else(null)? = exact_constants(c).into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ll_constants_asymptotic(epsilon: f64, nu: f64, out: *mut LlConstants) -> LlStatus {
    guard(|| {
        *out.as_mut().ok_or_else(null)? = asymptotic_constants(epsilon, nu).into();
        Ok(())
    })
}

/// γ recovered by Fourier inversion. Takes several seconds.
#[no_mangle]
pub unsafe extern "C" fn ll_gamma_via_inversion(m: *const LlMaterial, out: *mut f64) -> LlStatus {
    guard(|| {
        let c = material(m)?;
        let out = out.as_mut().ok_or_else(null)?;
        let ctx = KernelContext::new(c).map_err(fail)?;
        *out = gamma_via_inversion(&ctx).map_err(fail)?;
        Ok(())
    })
}

/// Exact transforms of weight function `j` (1..3) at real ξ for sign λ = `sign`.
/// `out` receives six complex values (U₁, U₂, U₃, Σ₁₂, Σ₂₂, Σ₃₂).
#[no_mangle]
pub unsafe extern "C" fn ll_weight_eval(
    m: *const LlMaterial,
    j: u32,
    xi: f64,
    sign: f64,
    out: *mut LlComplex,
) -> LlStatus {
    guard(|| {
        let c = material(m)?;
        if out.is_null() {
            return Err(null());
        }
        if sign != 1.0 && sign != -1.0 {
            return Err(bad("sign must be 1 or -1"));
        }
        let w = WeightIndex::from_number(j as usize).map_err(fail)?;
        let ctx = KernelContext::new(c).map_err(fail)?;
        let v = exact_eval(w, xi, sign, &ctx).map_err(fail)?.as_array();
        let dst = std::slice::from_raw_parts_mut(out, 6);
        for (d, s) in dst.iter_mut().zip(v) {
            *d = s.into();
        }
        Ok(())
    })
}

/// ΔK and ΔK_III along a periodic front; `n` must be a power of two and
/// each output array must hold `n` doubles.
#[no_mangle]
pub unsafe extern "C" fn ll_perturb_front(
    m: *const LlMaterial,
    profile: *const f64,
    n: usize,
    length: f64,
    baseline: *const LlBaseline,
    dk_re: *mut f64,
    dk_im: *mut f64,
    dk_iii: *mut f64,
) -> LlStatus {
    guard(|| {
        let c = material(m)?;
        let b = baseline.as_ref().ok_or_else(null)?;
        if profile.is_null() || dk_re.is_null() || dk_im.is_null() || dk_iii.is_null() {
            return Err(null());
        }
        let prof = std::slice::from_raw_parts(profile, n);
        let base = FrontBaseline {
            k: Complex64::new(b.k.re, b.k.im),
            k_iii: b.k_iii,
            dk_da: Complex64::new(b.dk_da.re, b.dk_da.im),
            dkiii_da: b.dkiii_da,
            delta: b.delta,
        };
        let r = perturb_front(prof, length, &base, &exact_constants(c), c).map_err(fail)?;
        let (re, im, k3) = (
            std::slice::from_raw_parts_mut(dk_re, n),
            std::slice::from_raw_parts_mut(dk_im, n),
            std::slice::from_raw_parts_mut(dk_iii, n),
        );
        for i in 0..n {
            re[i] = r.dk[i].re;
            im[i] = r.dk[i].im;
            k3[i] = r.dk_iii[i];
        }
        Ok(())
    })
}

/// Builds the h_kp kernels with default grids. Takes several seconds.
#[no_mangle]
pub unsafe extern "C" fn ll_kernel_new(m: *const LlMaterial, out: *mut *mut LlKernel) -> LlStatus {
    guard(|| {
        let c = material(m)?;
        if out.is_null() {
            return Err(null());
        }
        *out = std::ptr::null_mut();
        let ctx = KernelContext::new(c).map_err(fail)?;
        let inner = WeightKernel::new(&ctx, &KernelSettings::default()).map_err(fail)?;
        *out = Box::into_raw(Box::new(LlKernel { inner }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn ll_kernel_free(k: *mut LlKernel) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// h_kp(x, t) with 1-based indices k, p.
#[no_mangle]
pub unsafe extern "C" fn ll_kernel_eval(
    kern: *const LlKernel,
    k: u32,
    p: u32,
    x: f64,
    t: f64,
    out: *mut LlComplex,
) -> LlStatus {
    guard(|| {
        let kern = kern.as_ref().ok_or_else(null)?;
        let out = out.as_mut().ok_or_else(null)?;
        if !(1..=3).contains(&k) || !(1..=3).contains(&p) {
            return Err(bad("k and p must be 1, 2 or 3"));
        }
        *out = kern.inner.h(k as usize - 1, p as usize - 1, x, t).map_err(fail)?.into();
        Ok(())
    })
}
