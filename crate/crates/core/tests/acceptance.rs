//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the summary lines always reach the output.

use llcrack::bimaterial::{derive_constants, BimaterialConstants, MaterialPair};
use llcrack::ll_constants::{exact_constants, gamma_via_inversion, sweep, InversionSettings, F33Transform};
use llcrack::sif_perturbation::{
    coupling_matrices, h33_single_integral, perturb_front, perturb_spectral, FrontBaseline, KernelSettings,
    SpectralPerturbation, WeightKernel,
};
use llcrack::weight_functions::{correction_decay_exponents, make_weight_function, Expansion, WeightIndex};
use llcrack::wiener_hopf::{quarter_pi_integral, CMat3, KernelContext};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;
use std::time::Instant;

/// (ν₊, μ₊, ν₋, μ₋) for the criteria that need "three material pairs".
const PAIRS: [(f64, f64, f64, f64); 3] = [(0.3, 3.0, 0.3, 1.0), (0.2, 10.0, 0.45, 1.0), (0.0, 1.0, 0.5, 1.0)];

fn constants(p: (f64, f64, f64, f64)) -> BimaterialConstants {
    derive_constants(&MaterialPair::new(p.0, p.1, p.2, p.3).unwrap()).unwrap()
}

fn contexts() -> Vec<KernelContext> {
    PAIRS.iter().map(|&p| KernelContext::new(&constants(p)).unwrap()).collect()
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

/// ρ*⁻¹G*(ξ, s) on the real axis, written out from the kernel display.
fn g_over_rho(xi: f64, s: f64, ds: f64, es: f64) -> CMat3 {
    let r2 = xi * xi + 1.0;
    let r = r2.sqrt();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let g = CMat3::new(
        c(r2, 0.0),
        c(0.0, ds * s * r),
        c(0.0, ds * xi * r),
        c(0.0, -ds * s * r),
        c(r2 + es * xi * xi, 0.0),
        c(-es * xi * s, 0.0),
        c(0.0, -ds * xi * r),
        c(-es * xi * s, 0.0),
        c(r2 + es, 0.0),
    );
    g * Complex64::from(-1.0 / (r2 * r))
}

fn grid50() -> Vec<f64> {
    (0..50).map(|k| -10.0 + 20.0 * k as f64 / 49.0).collect()
}

fn c1_bimaterial() -> Verdict {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let np = rng.gen_range(0.0..=0.5);
        let nm = rng.gen_range(0.0..=0.5);
        let mp = 10f64.powf(rng.gen_range(-3.0..3.0));
        let mm = 10f64.powf(rng.gen_range(-3.0..3.0));
        let c = derive_constants(&MaterialPair::new(np, mp, nm, mm).unwrap()).unwrap();
        // ε from b and d, and again straight from the moduli
        let (b, d) = (c.b, c.d);
        let from_bd = ((b + d) / (b - d)).ln() / (2.0 * PI);
        let (np, mp, nm, mm) = (c.pair.nu_plus, c.pair.mu_plus, c.pair.nu_minus, c.pair.mu_minus);
        let from_moduli = ((mp + (3.0 - 4.0 * np) * mm) / (mm + (3.0 - 4.0 * nm) * mp)).ln() / (2.0 * PI);
        worst = worst.max((c.epsilon - from_bd).abs()).max((c.epsilon - from_moduli).abs());
    }
    verdict(worst < 1e-12, format!("max |Δε| = {worst:.2e} over 100 random pairs"))
}

fn c2_quarter_pi() -> Verdict {
    let mut worst: f64 = 0.0;
    for ds in [0.1, 0.5, 0.9] {
        worst = worst.max((quarter_pi_integral(ds).unwrap() - PI / 4.0).abs());
    }
    verdict(worst < 1e-10, format!("max |I − π/4| = {worst:.2e}"))
}

fn c3_factorization(ctxs: &[KernelContext]) -> Verdict {
    let mut worst: f64 = 0.0;
    for ctx in ctxs {
        for s in [1.0, -1.0] {
            for xi in grid50() {
                let m = ctx.y_matrices(xi, s).unwrap();
                let g = g_over_rho(xi, s, ctx.ds, ctx.es);
                worst = worst.max((m.y_plus_inv * m.y_minus - g).norm());
            }
        }
    }
    verdict(worst < 1e-8, format!("max Frobenius residual = {worst:.2e}"))
}

fn c4_weight_functions(ctxs: &[KernelContext]) -> Verdict {
    let (mut wh, mut cond): (f64, f64) = (0.0, 0.0);
    for ctx in ctxs {
        for j in WeightIndex::ALL {
            let w = make_weight_function(j, ctx);
            for s in [1.0, -1.0] {
                for xi in grid50() {
                    let x = Complex64::from(xi);
                    let p = w.plus(x, s).unwrap();
                    let m = w.minus(x, s).unwrap();
                    let g = g_over_rho(xi, s, ctx.ds, ctx.es);
                    let r: f64 = (0..3)
                        .map(|i| (p[i] - (0..3).map(|k| g[(i, k)] * m[k]).sum::<Complex64>()).norm_sqr())
                        .sum();
                    wh = wh.max(r.sqrt());
                }
                cond = w.conditions(s).iter().map(|v| v.norm()).fold(cond, f64::max);
            }
        }
    }
    verdict(wh < 1e-8 && cond < 1e-12, format!("equation residual {wh:.2e}, conditions {cond:.2e}"))
}

fn c5_decay(ctxs: &[KernelContext]) -> Verdict {
    let mut worst = f64::INFINITY;
    let mut at = String::new();
    for (n, ctx) in ctxs.iter().enumerate() {
        for j in WeightIndex::ALL {
            for s in [1.0, -1.0] {
                let p = correction_decay_exponents(j, s, ctx, Expansion::Corrected, 1e2, 1e4, 41).unwrap();
                for (c, &v) in p.iter().enumerate() {
                    if v < worst {
                        worst = v;
                        at = format!("pair {}, {j:?}, sign {s}, component {}", n + 1, c + 1);
                    }
                }
            }
        }
    }
    verdict(worst >= 1.8, format!("min fitted exponent {worst:.3} ({at})"))
}

fn c6_identities() -> Verdict {
    let mut worst: f64 = 0.0;
    for p in PAIRS {
        let c = constants(p);
        let k = exact_constants(&c);
        let (b, d, e) = (Complex64::from(c.b), Complex64::from(c.d), Complex64::from(c.e));
        let sq = (b * b - d * d).sqrt();
        let g = 2.0 / PI * (3.0 * (b + e) - sq) / (sq + b + e);
        worst = worst.max(g.im.abs()).max((g.re - k.gamma).abs());
        let gz = -k.gamma_iii * Complex64::new(1.0, 2.0 * c.epsilon) * (b + e) / sq;
        worst = worst.max((gz - k.gamma_z).norm());
    }
    // pairs with d = 0: equal (1 − 2ν)/μ on both sides
    for (np, nm) in [(0.3, 0.3), (0.1, 0.4), (0.25, 0.0), (0.45, 0.2)] {
        let mm = (1.0 - 2.0 * nm) / (1.0 - 2.0 * np);
        let c = constants((np, 1.0, nm, mm));
        let k = exact_constants(&c);
        let nu = c.e / (c.b + c.e);
        let q = PI * (2.0 - nu);
        let want = [4.0 * nu / q, 8.0 * (1.0 - nu) / q, 0.0, 0.0, 2.0 * (2.0 + nu) / q];
        for (x, w) in k.as_array().iter().zip(want) {
            worst = worst.max((x - w).norm());
        }
        worst = worst.max((k.gamma_plus + k.gamma_minus - 4.0 / PI).norm());
    }
    verdict(worst < 1e-12, format!("max identity residual {worst:.2e}"))
}

fn c7_inversion(ctxs: &[KernelContext]) -> Verdict {
    let mut worst: f64 = 0.0;
    let mut slowest: f64 = 0.0;
    for ctx in ctxs {
        let t = Instant::now();
        let g = gamma_via_inversion(ctx).unwrap();
        slowest = slowest.max(t.elapsed().as_secs_f64());
        let c = &ctx.constants;
        let sq = (c.b * c.b - c.d * c.d).sqrt();
        let exact = 2.0 / PI * (3.0 * (c.b + c.e) - sq) / (sq + c.b + c.e);
        worst = worst.max(((g - exact) / exact).abs());
    }
    verdict(worst < 1e-3 && slowest < 120.0, format!("max relative error {worst:.2e}, slowest pair {slowest:.1} s"))
}

fn c8_coupling() -> Verdict {
    let mut worst: f64 = 0.0;
    for p in PAIRS {
        let cm = coupling_matrices(&constants(p)).unwrap();
        for l in [-3.0, -0.5, 0.5, 1.0, 3.0] {
            worst = worst.max((cm.a_mat(l) * cm.b_tilde(l) - CMat3::identity()).norm());
        }
    }
    verdict(worst < 1e-10, format!("max ‖AB̃ − I‖ = {worst:.2e}"))
}

fn c9_kernel(ctx: &KernelContext) -> Verdict {
    let wk = WeightKernel::new(ctx, &KernelSettings::default()).unwrap();
    let h = |x: f64, t: f64| wk.h(2, 2, x, t).unwrap();
    let mut even: f64 = 0.0;
    let mut homog: f64 = 0.0;
    let mut ahead: f64 = 0.0;
    for t in [0.3, 1.0, 2.0] {
        let base = h(-1.0, t);
        even = even.max((base - h(-1.0, -t)).norm() / base.norm());
        homog = homog.max((h(-2.0, 2.0 * t) * 2f64.powf(1.5) - base).norm() / base.norm());
        ahead = ahead.max(h(1.0, t).norm() / base.norm());
    }
    let settings = InversionSettings { xi_max: 100.0, y_resolve: 30.0, ..Default::default() };
    let f33 = F33Transform::new(ctx, &settings).unwrap();
    let single = h33_single_integral(-1.0, 2.0, &f33, 30.0).unwrap();
    let double = h(-1.0, 2.0);
    let agree = (double - single).norm() / single.abs();
    let pass = even < 1e-6 && homog < 1e-3 && ahead < 1e-6 && agree < 1e-3;
    verdict(
        pass,
        format!("evenness {even:.1e}, homogeneity {homog:.1e}, ahead {ahead:.1e}, single-integral {agree:.1e}"),
    )
}

fn c10_homogeneous_limit() -> Verdict {
    let c = constants((0.3, 1.0, 0.3, 1.0));
    let k = exact_constants(&c);
    let lambda_grid: Vec<f64> = (-32..=32).map(|m| 0.37 * m as f64).collect();
    let delta_phi_hat: Vec<Complex64> =
        lambda_grid.iter().map(|&l| Complex64::new((1.3 * l).cos(), 0.2 * l)).collect();
    let baseline = FrontBaseline { k: Complex64::from(1.7), ..Default::default() };
    let input = SpectralPerturbation { lambda_grid: lambda_grid.clone(), delta_phi_hat: delta_phi_hat.clone(), baseline };
    let (dk, _) = perturb_spectral(&input, &k, &c).unwrap();
    let spec = lambda_grid
        .iter()
        .zip(&delta_phi_hat)
        .zip(&dk)
        .map(|((&l, &phi), &v)| (v - (-0.5 * l.abs() * 1.7 * phi)).norm())
        .fold(0.0, f64::max);

    let (n, length) = (256, 10.0);
    let m0 = 3.0;
    let l0 = 2.0 * PI * m0 / length;
    let x: Vec<f64> = (0..n).map(|i| i as f64 * length / n as f64).collect();
    let profile: Vec<f64> = x.iter().map(|&v| (l0 * v).cos()).collect();
    let out = perturb_front(&profile, length, &baseline, &k, &c).unwrap();
    let phys = x
        .iter()
        .zip(&out.dk)
        .map(|(&v, &d)| (d - Complex64::from(-0.5 * l0 * 1.7 * (l0 * v).cos())).norm())
        .fold(0.0, f64::max);
    verdict(spec < 1e-12 && phys < 1e-10, format!("spectral {spec:.1e}, cosine round trip {phys:.1e}"))
}

fn c11_sweep() -> Verdict {
    let eta: Vec<f64> = (0..37).map(|k| -0.9 + 0.05 * k as f64).collect();
    let equal = sweep(0.3, 0.3, &eta).unwrap();
    let mixed = sweep(0.0, 0.5, &eta).unwrap();
    let worst = equal
        .iter()
        .flat_map(|r| r.modulus_ratios.iter().filter(|v| !v.is_nan()).map(|v| (v - 1.0).abs()))
        .fold(0.0, f64::max);
    // γ₊ deviation at matched |η|, worst of the two signs
    let dev = |rs: &[llcrack::ll_constants::SweepRecord], k: usize| {
        (rs[k].modulus_ratios[0] - 1.0).abs().max((rs[36 - k].modulus_ratios[0] - 1.0).abs())
    };
    let ordered = (0..18).all(|k| dev(&mixed, k) > dev(&equal, k));
    verdict(
        worst < 0.1 && ordered,
        format!("equal-ν max deviation {worst:.3}, γ₊ ordering at every |η| > 0: {ordered}"),
    )
}

fn main() {
    let mut failed = 0;
    let mut report = |n: u32, name: &str, limit: Option<f64>, f: &mut dyn FnMut() -> Verdict| {
        let t = Instant::now();
        let v = f();
        let secs = t.elapsed().as_secs_f64();
        let in_time = limit.map_or(true, |l| secs < l);
        let pass = v.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" (limit {l:.0} s)"));
        println!("{} {n:>2} {name}: {} [{secs:.2} s{budget}]", if pass { "PASS" } else { "FAIL" }, v.detail);
    };
    let ctxs = contexts();
    report(1, "bimaterial self-consistency", Some(1.0), &mut c1_bimaterial);
    report(2, "pi/4 identity", Some(5.0), &mut c2_quarter_pi);
    report(3, "factorization residual", Some(60.0), &mut || c3_factorization(&ctxs));
    report(4, "weight-function equation and conditions", None, &mut || c4_weight_functions(&ctxs));
    report(5, "large-xi correction decay", Some(120.0), &mut || c5_decay(&ctxs));
    report(6, "exact-constant identities", None, &mut c6_identities);
    report(7, "gamma by Fourier inversion", Some(360.0), &mut || c7_inversion(&ctxs));
    report(8, "coupling inverse", None, &mut c8_coupling);
    report(9, "kernel properties", Some(300.0), &mut || c9_kernel(&ctxs[0]));
    report(10, "homogeneous limit", None, &mut c10_homogeneous_limit);
    report(11, "sweep regression", Some(30.0), &mut c11_sweep);
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
