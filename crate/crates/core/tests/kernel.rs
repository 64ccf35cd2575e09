use llcrack::bimaterial::{derive_constants, MaterialPair};
use llcrack::error::Error;
use llcrack::ll_constants::{F33Transform, InversionSettings};
use llcrack::quadrature::gauss_legendre;
use llcrack::sif_perturbation::kernel::{ll_weight_kernel, WeightJumps};
use llcrack::sif_perturbation::{
    coupling_matrices, h33_single_integral, point_force_sif, sif_from_load, CouplingMatrices, KernelSettings,
    SifSettings, WeightKernel,
};
use llcrack::wiener_hopf::KernelContext;
use num_complex::Complex64;
use std::sync::OnceLock;

struct Fixture {
    ctx: KernelContext,
    cm: CouplingMatrices,
    jumps: WeightJumps,
    kernel: WeightKernel,
}

fn fx() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let c = derive_constants(&MaterialPair::new(0.3, 3.0, 0.3, 1.0).unwrap()).unwrap();
        let ctx = KernelContext::new(&c).unwrap();
        let cm = coupling_matrices(&c).unwrap();
        let s = KernelSettings::default();
        let jumps = WeightJumps::new(&ctx, &s).unwrap();
        let kernel = WeightKernel::from_jumps(&jumps, &cm, s.y_max);
        Fixture { ctx, cm, jumps, kernel }
    })
}

fn h(k: usize, p: usize, x: f64, t: f64) -> Complex64 {
    fx().kernel.h(k, p, x, t).unwrap()
}

#[test]
fn parity_in_the_front_coordinate() {
    for k in 0..3 {
        for p in 0..3 {
            // odd exactly when one index is antiplane and the other is not
            let sign = if (k == 2) != (p == 2) { -1.0 } else { 1.0 };
            for t in [0.2, 0.9, 3.0] {
                let (a, b) = (h(k, p, -1.0, t), h(k, p, -1.0, -t));
                assert!((a - sign * b).norm() < 1e-12 * a.norm(), "h{}{} t={t}", k + 1, p + 1);
            }
        }
    }
}

#[test]
fn rows_pair_up_by_conjugation() {
    for t in [-1.1, 0.4, 2.0] {
        for x in [-0.3, -2.0] {
            for p in 0..3 {
                assert!((h(1, p, x, t) - h(0, p, x, t).conj()).norm() < 1e-10 * h(0, p, x, t).norm());
                assert!(h(2, p, x, t).im.abs() < 1e-10 * h(2, p, x, t).norm());
            }
        }
    }
}

#[test]
fn modulus_scales_with_distance() {
    for (k, p) in [(0, 0), (0, 2), (2, 1), (2, 2)] {
        for c in [0.25, 4.0] {
            let a = h(k, p, -0.8, 0.5).norm();
            let b = h(k, p, -0.8 * c, 0.5 * c).norm();
            assert!((b - a * c.powf(-1.5)).abs() < 1e-10 * a, "h{}{} c={c}", k + 1, p + 1);
        }
    }
}

#[test]
fn kernel_vanishes_ahead_of_the_front() {
    let scale = h(2, 2, -1.0, 0.0).norm();
    for k in 0..3 {
        for p in 0..3 {
            for t in [0.0, 0.7, -2.5] {
                assert!(h(k, p, 1.0, t).norm() < 1e-6 * scale, "h{}{}", k + 1, p + 1);
            }
        }
    }
}

#[test]
fn antiplane_kernel_agrees_with_its_single_integral() {
    let settings = InversionSettings { xi_max: 100.0, y_resolve: 30.0, ..Default::default() };
    let f33 = F33Transform::new(&fx().ctx, &settings).unwrap();
    for (x, t) in [(-1.0, 0.0), (-0.5, 0.8), (-2.0, 3.0)] {
        let single = h33_single_integral(x, t, &f33, 30.0).unwrap();
        let double = h(2, 2, x, t);
        assert!(double.im.abs() < 1e-12 * single.abs());
        assert!((double.re - single).abs() < 1e-3 * single.abs(), "({x}, {t}): {} vs {single}", double.re);
    }
    assert!(h33_single_integral(1.0, 0.0, &f33, 30.0).is_err());
}

#[test]
fn kernel_argument_checks() {
    let ctx = &fx().ctx;
    assert!(matches!(ll_weight_kernel(0, 1, -1.0, 0.0, ctx), Err(Error::InvalidArgument(_))));
    assert!(fx().kernel.h(3, 0, -1.0, 0.0).is_err());
    assert!(fx().kernel.h(0, 0, 0.0, 0.0).is_err());
}

fn gaussian(p: usize, amp: f64) -> impl Fn(f64, f64) -> [Complex64; 3] {
    move |x, _| {
        let mut v = [Complex64::from(0.0); 3];
        v[p] = Complex64::from(amp * (-(x + 0.5) * (x + 0.5) / (2.0 * 0.05 * 0.05)).exp());
        v
    }
}

#[test]
fn distributed_load_is_a_superposition_of_point_forces() {
    let f = fx();
    let s = SifSettings { panels_per_decade: 24, ..Default::default() };
    let (gx, gw) = gauss_legendre(64);
    for p in 0..3 {
        for lambda in [1.5, -0.7] {
            let got = sif_from_load(gaussian(p, 1.0), -1.0, lambda, &f.jumps, &f.cm, &s).unwrap();
            // the point-force kernels are for a force −e_p, so the sum carries a minus sign
            let mut want = [Complex64::from(0.0); 3];
            for (a, b) in [(-0.9, -0.5), (-0.5, -0.1)] {
                let (c, hw) = (0.5 * (a + b), 0.5 * (b - a));
                for (g, w) in gx.iter().zip(&gw) {
                    let x = c + hw * g;
                    let load = gaussian(p, 1.0)(x, lambda)[p];
                    let k = point_force_sif(p, x, lambda, &f.jumps, &f.cm).unwrap();
                    for i in 0..3 {
                        want[i] -= load * k[i] * hw * w;
                    }
                }
            }
            let scale = want.iter().map(|v| v.norm()).fold(0.0, f64::max);
            for i in 0..3 {
                assert!((got[i] - want[i]).norm() < 1e-6 * scale, "p={p} lambda={lambda} K{}: {} vs {}", i + 1, got[i], want[i]);
            }
        }
    }
}

#[test]
fn load_response_is_linear_and_checks_its_support() {
    let f = fx();
    let s = SifSettings::default();
    let zero = sif_from_load(|_, _| [Complex64::from(0.0); 3], -1.0, 1.0, &f.jumps, &f.cm, &s).unwrap();
    assert!(zero.iter().all(|v| *v == Complex64::from(0.0)));
    let one = sif_from_load(gaussian(1, 1.0), -1.0, 2.0, &f.jumps, &f.cm, &s).unwrap();
    let two = sif_from_load(gaussian(1, 2.0), -1.0, 2.0, &f.jumps, &f.cm, &s).unwrap();
    for i in 0..3 {
        assert!((two[i] - 2.0 * one[i]).norm() < 1e-12 * one[i].norm().max(1e-300));
    }
    let slow = sif_from_load(gaussian(1, 1.0), -0.6, 2.0, &f.jumps, &f.cm, &s);
    assert!(matches!(slow, Err(Error::LoadDecayTooSlow(_))));
    assert!(sif_from_load(gaussian(1, 1.0), -1.0, 0.0, &f.jumps, &f.cm, &s).is_err());
    assert!(point_force_sif(0, 0.5, 1.0, &f.jumps, &f.cm).is_err());
}
