use llcrack::bimaterial::{derive_constants, MaterialPair};
use llcrack::ll_constants::exact_constants;
use llcrack::sif_perturbation::coupling_matrices;
use llcrack::weight_functions::{
    asymptotic_eval, asymptotic_leading, correction_decay_exponents, exact_eval, f33_plus, gamma33,
    make_weight_function, Expansion, WeightIndex,
};
use llcrack::wiener_hopf::KernelContext;
use num_complex::Complex64;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn ctx() -> KernelContext {
    KernelContext::new(&derive_constants(&MaterialPair::new(0.3, 3.0, 0.3, 1.0).unwrap()).unwrap()).unwrap()
}

#[test]
fn weight_functions_solve_the_matrix_problem_pointwise() {
    for (ds, es) in [(0.2, 0.5), (0.45, 0.1), (0.8, 0.3)] {
        let ctx = KernelContext::from_reduced(ds, es).unwrap();
        for j in WeightIndex::ALL {
            let w = make_weight_function(j, &ctx);
            for s in [1.0, -1.0] {
                for xi in [-4.0, -1.0, -0.25, 0.25, 1.0, 4.0] {
                    let r = w.wh_equation_residual(xi, s).unwrap();
                    assert!(r < 1e-8, "{j:?} s={s} xi={xi}: {r:e}");
                }
            }
        }
    }
}

#[test]
fn first_coefficient_set_satisfies_the_conditions() {
    let ctx = ctx();
    let (ds, es, m) = (ctx.ds, ctx.es, ctx.m_minus);
    for s in [1.0, -1.0] {
        let c = make_weight_function(WeightIndex::W1, &ctx).coefficients(s);
        let want = [Complex64::from(1.0 / (1.0 + es)), 0.0.into(), 0.0.into(), 0.0.into(), 0.0.into(), -2.0 * I * ds * m * s];
        for (got, want) in c.iter().zip(want) {
            assert!((got - want).norm() < 1e-15);
        }
        for j in WeightIndex::ALL {
            let cond = make_weight_function(j, &ctx).conditions(s);
            assert!(cond.iter().all(|v| v.norm() < 1e-12), "{j:?}: {cond:?}");
        }
    }
}

#[test]
fn both_sides_meet_the_same_rational_vector() {
    let ctx = ctx();
    for j in WeightIndex::ALL {
        let w = make_weight_function(j, &ctx);
        for s in [1.0, -1.0] {
            for z in [Complex64::new(0.3, 0.2), Complex64::new(-1.7, 0.6), Complex64::new(2.5, 3.0)] {
                let (yp, _) = ctx.y_plus(z, s).unwrap();
                let p = w.plus(z, s).unwrap();
                let e = w.entire_vector(z, s);
                let (ym, _) = ctx.y_minus(z.conj(), s).unwrap();
                let m = w.minus(z.conj(), s).unwrap();
                let em = w.entire_vector(z.conj(), s);
                for i in 0..3 {
                    let up: Complex64 = (0..3).map(|k| yp[(i, k)] * p[k]).sum();
                    let down: Complex64 = (0..3).map(|k| ym[(i, k)] * m[k]).sum();
                    assert!((up - e[i]).norm() < 1e-8 * e[i].norm().max(1.0), "{j:?} upper {z}");
                    assert!((down - em[i]).norm() < 1e-8 * em[i].norm().max(1.0), "{j:?} lower {z}");
                }
            }
        }
    }
}

#[test]
fn removable_points_are_filled_in_smoothly() {
    let ctx = ctx();
    let a = ctx.a;
    let w = make_weight_function(WeightIndex::W2, &ctx);
    let at = w.plus(Complex64::from(a), 1.0).unwrap();
    let beside = w.plus(Complex64::from(a + 1e-4), 1.0).unwrap();
    for k in 0..3 {
        assert!((at[k] - beside[k]).norm() < 1e-3 * at[k].norm().max(1.0));
    }
}

#[test]
fn f33_leading_and_second_terms() {
    let ctx = ctx();
    let cm = coupling_matrices(&ctx.constants).unwrap();
    let xi = 1e4f64;
    let f = f33_plus(Complex64::from(xi), &ctx, &cm).unwrap();
    let lead = Complex64::new(1.0, 1.0) * xi.powf(-0.5);
    assert!((f - lead).norm() / lead.norm() < 1e-2);
    let g33 = gamma33(&ctx);
    let big = 1e6f64;
    let f = f33_plus(Complex64::from(big), &ctx, &cm).unwrap();
    let second = (f - Complex64::new(1.0, 1.0) * big.powf(-0.5)) * big.powf(1.5) * 4.0 / (Complex64::new(1.0, -1.0) * PI);
    assert!((second - g33).norm() < 1e-4, "{second} vs {g33}");
}

#[test]
fn gamma33_is_the_closed_form_gamma() {
    for p in [(0.3, 3.0, 0.3, 1.0), (0.0, 1.0, 0.5, 1.0), (0.2, 10.0, 0.45, 1.0)] {
        let c = derive_constants(&MaterialPair::new(p.0, p.1, p.2, p.3).unwrap()).unwrap();
        let ctx = KernelContext::new(&c).unwrap();
        assert!((gamma33(&ctx) - exact_constants(&c).gamma).abs() < 1e-13);
    }
}

#[test]
fn corrected_expansion_converges_faster_than_the_leading_terms() {
    let ctx = KernelContext::from_reduced(0.3, 0.4).unwrap();
    for j in WeightIndex::ALL {
        let ex = exact_eval(j, 1e3, 1.0, &ctx).unwrap().as_array();
        let two = asymptotic_eval(j, 1e3, 1.0, &ctx, Expansion::Corrected).as_array();
        let one = asymptotic_leading(j, 1e3, 1.0, &ctx).as_array();
        for k in 0..6 {
            let e2 = (ex[k] - two[k]).norm() / ex[k].norm();
            let e1 = (ex[k] - one[k]).norm() / ex[k].norm();
            assert!(e2 < 1e-4, "{j:?} component {k}: {e2:e}");
            assert!(e1 > 20.0 * e2, "{j:?} component {k}: {e1:e} vs {e2:e}");
        }
    }
}

#[test]
fn leading_terms_alone_leave_a_first_order_error() {
    let ctx = KernelContext::from_reduced(0.3, 0.4).unwrap();
    let rel = |xi: f64| {
        let ex = exact_eval(WeightIndex::W1, xi, 1.0, &ctx).unwrap().as_array();
        let one = asymptotic_leading(WeightIndex::W1, xi, 1.0, &ctx).as_array();
        (ex[1] - one[1]).norm() / ex[1].norm()
    };
    let slope = (rel(1e2) / rel(1e4)).log10() / 2.0;
    assert!((0.7..1.3).contains(&slope), "slope {slope}");
}

#[test]
fn printed_second_order_terms_fall_short_of_second_order() {
    // kept as a record of why the corrected coefficients exist
    let ctx = KernelContext::from_reduced(0.5, 0.4).unwrap();
    let p = correction_decay_exponents(WeightIndex::W1, 1.0, &ctx, Expansion::Printed, 1e2, 1e4, 24).unwrap();
    assert!(p.iter().copied().fold(f64::INFINITY, f64::min) < 1.5, "{p:?}");
    let q = correction_decay_exponents(WeightIndex::W1, 1.0, &ctx, Expansion::Corrected, 1e2, 1e4, 24).unwrap();
    assert!(q.iter().all(|&v| v >= 1.8), "{q:?}");
}

#[test]
fn nearly_homogeneous_pairs_stay_bounded_and_convergent() {
    for ds in [0.1, 0.01] {
        let ctx = KernelContext::from_reduced(ds, 0.4).unwrap();
        for xi in [1e2, 1e3] {
            let ex = exact_eval(WeightIndex::W3, xi, -1.0, &ctx).unwrap().as_array();
            let asy = asymptotic_eval(WeightIndex::W3, xi, -1.0, &ctx, Expansion::Corrected).as_array();
            for k in 0..6 {
                assert!(ex[k].norm().is_finite());
                assert!((ex[k] - asy[k]).norm() < 1e-3 * ex[k].norm(), "d*={ds} xi={xi} k={k}");
            }
        }
    }
}

#[test]
fn decay_fit_rejects_bad_ranges() {
    let ctx = ctx();
    assert!(correction_decay_exponents(WeightIndex::W1, 1.0, &ctx, Expansion::Corrected, 1e3, 1e2, 30).is_err());
    assert!(correction_decay_exponents(WeightIndex::W1, 1.0, &ctx, Expansion::Corrected, 1e2, 1e3, 10).is_err());
    assert!(WeightIndex::from_number(4).is_err());
}
