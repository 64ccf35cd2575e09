use llcrack::bimaterial::{derive_constants, MaterialPair};
use llcrack::special_functions::{branch_pow, cgamma, log_branch, BaseShift, HalfPlane};
use llcrack::wiener_hopf::{b_star, psi_star, CMat3, KernelContext};
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn material() -> impl Strategy<Value = MaterialPair> {
    (0.0..=0.5f64, -3.0..3.0f64, 0.0..=0.5f64, -3.0..3.0f64)
        .prop_map(|(np, lp, nm, lm)| MaterialPair::new(np, 10f64.powf(lp), nm, 10f64.powf(lm)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn epsilon_forms_agree(p in material()) {
        let k = derive_constants(&p).unwrap();
        let from_bd = ((k.b + k.d) / (k.b - k.d)).ln() / (2.0 * PI);
        prop_assert!((k.epsilon - from_bd).abs() < 1e-12);
        prop_assert!((k.epsilon - k.epsilon_moduli).abs() < 1e-12);
        prop_assert!(k.d >= 0.0 && k.epsilon >= 0.0);
        prop_assert!(k.d_star < 1.0 && k.e_star >= 0.0);
        prop_assert!((k.d1 - 2.0 * PI * k.epsilon).abs() < 1e-12);
    }

    #[test]
    fn swapping_halves_gives_the_same_normalized_constants(p in material()) {
        prop_assert_eq!(p.swap().swap(), p);
        let a = derive_constants(&p).unwrap();
        let b = derive_constants(&p.swap()).unwrap();
        for (x, y) in [(a.b, b.b), (a.d, b.d), (a.e, b.e), (a.epsilon, b.epsilon), (a.nu_composite, b.nu_composite)] {
            prop_assert!((x - y).abs() <= 1e-14 * x.abs().max(1.0));
        }
        prop_assert_eq!(a.eta, b.eta);
        prop_assert_eq!(a.pair.nu_plus, b.pair.nu_plus);
    }

    #[test]
    fn common_modulus_scale_drops_out(p in material(), ls in -4.0..4.0f64) {
        let s = 10f64.powf(ls);
        let q = MaterialPair::new(p.nu_plus, p.mu_plus * s, p.nu_minus, p.mu_minus * s).unwrap();
        let a = derive_constants(&p).unwrap();
        let b = derive_constants(&q).unwrap();
        for (x, y) in [(a.epsilon, b.epsilon), (a.d_star, b.d_star), (a.e_star, b.e_star), (a.nu_composite, b.nu_composite), (a.eta, b.eta)] {
            prop_assert!((x - y).abs() < 1e-12);
        }
        prop_assert!((a.b - b.b * s).abs() <= 1e-12 * a.b);
    }

    #[test]
    fn gamma_recurrence(re in 0.05..6.0f64, im in -4.0..4.0f64) {
        let z = c(re, im);
        let lhs = cgamma(z + 1.0).unwrap();
        let rhs = z * cgamma(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }

    #[test]
    fn gamma_reflection(re in -2.5..2.5f64, im in 0.05..3.0f64) {
        let z = c(re, im);
        let lhs = cgamma(z).unwrap() * cgamma(1.0 - z).unwrap();
        let rhs = PI / (z * PI).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm());
    }

    #[test]
    fn gamma_on_the_half_line(y in -3.0..3.0f64) {
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        let g = cgamma(c(0.5, y)).unwrap();
        prop_assert!((g.norm_sqr() - PI / (PI * y).cosh()).abs() < 1e-13);
        prop_assert!((cgamma(c(0.5, -y)).unwrap() - g.conj()).norm() < 1e-14);
    }

    #[test]
    fn imaginary_power_of_real_base_is_unimodular(xi in 1.0..1e6f64, eps in -0.2..0.2f64) {
        let v = branch_pow(BaseShift::XiBare, c(xi, 0.0), c(0.0, eps), HalfPlane::Upper).unwrap();
        prop_assert!((v.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn branch_powers_are_continuous_from_their_side(re in -5.0..5.0f64, alpha in -1.5..1.5f64) {
        let a = c(alpha, 0.3);
        for (shift, hp) in [(BaseShift::XiPlusI, HalfPlane::Upper), (BaseShift::XiMinusI, HalfPlane::Lower),
                            (BaseShift::XiPlusA(-0.7), HalfPlane::Upper), (BaseShift::XiMinusA(-0.7), HalfPlane::Lower)] {
            let on = branch_pow(shift, c(re, 0.0), a, hp);
            let near = branch_pow(shift, c(re, hp.sign() * 1e-9), a, hp);
            if let (Ok(on), Ok(near)) = (on, near) {
                prop_assert!((on - near).norm() < 1e-6 * on.norm().max(1.0));
            }
        }
        let w = c(re, 0.2);
        prop_assert!((log_branch(w, HalfPlane::Upper).exp() - w).norm() < 1e-13);
        prop_assert!((log_branch(w.conj(), HalfPlane::Lower).exp() - w.conj()).norm() < 1e-13);
    }
}

/// ρ*⁻¹G* on the real axis, written out independently of the library.
fn g_over_rho(xi: f64, s: f64, ds: f64, es: f64) -> CMat3 {
    let r2 = xi * xi + 1.0;
    let r = r2.sqrt();
    CMat3::new(
        c(r2, 0.0),
        c(0.0, ds * s * r),
        c(0.0, ds * xi * r),
        c(0.0, -ds * s * r),
        c(r2 + es * xi * xi, 0.0),
        c(-es * xi * s, 0.0),
        c(0.0, -ds * xi * r),
        c(-es * xi * s, 0.0),
        c(r2 + es, 0.0),
    ) * Complex64::from(-1.0 / (r2 * r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn factorization_holds_for_random_reduced_pairs(ds in 0.05..0.95f64, es in 0.0..1.0f64) {
        let ctx = KernelContext::from_reduced(ds, es).unwrap();
        for s in [1.0, -1.0] {
            for k in 0..21 {
                let xi = -10.0 + k as f64;
                let m = ctx.y_matrices(xi, s).unwrap();
                prop_assert!((m.y_plus_inv * m.y_minus - g_over_rho(xi, s, ds, es)).norm() < 1e-8);
                prop_assert!((m.y_plus_inv * m.y_plus - CMat3::identity()).norm() < 1e-10);
                prop_assert!((m.y_minus_inv * m.y_minus - CMat3::identity()).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn psi_star_approaches_its_logarithmic_asymptote() {
    let ctx = KernelContext::from_reduced(0.4, 0.3).unwrap();
    let mut prev = f64::INFINITY;
    for xi in [1e2, 1e3] {
        let x = c(xi, 0.0);
        let lead = c(0.0, 1.0) / (PI * xi) * (2.0 * x / c(0.0, 1.0)).ln();
        let err = (psi_star(x, HalfPlane::Upper, &ctx).unwrap() - lead).norm();
        assert!(err < 2.0 * xi.ln() / xi.powi(3), "xi = {xi}: {err:e}");
        assert!(err < prev / 100.0);
        prev = err;
    }
}

#[test]
fn b_star_approaches_its_logarithmic_asymptote() {
    let ctx = KernelContext::from_reduced(0.4, 0.3).unwrap();
    let k = &ctx.constants;
    let b0 = k.b0.unwrap();
    for (hp, unit) in [(HalfPlane::Upper, c(0.0, 1.0)), (HalfPlane::Lower, c(0.0, -1.0))] {
        let mut errs = Vec::new();
        for xi in [1e2f64, 1e3] {
            let lead = k.d1 / (2.0 * PI) * (xi.ln() + (2.0 / unit).ln()) + b0 - unit * (0.5 / (k.d_star * xi));
            errs.push((b_star(c(xi, 0.0), hp, &ctx).unwrap() - lead).norm());
        }
        assert!(errs[0] < 5.0 * 100f64.ln() / 1e4, "{hp:?}: {errs:?}");
        // O(log ξ/ξ²) beyond the 1/ξ term: about 1.5/100 between the two points
        assert!(errs[1] < errs[0] * 0.03, "{hp:?}: {errs:?}");
    }
}
