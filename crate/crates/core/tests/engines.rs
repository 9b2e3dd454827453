//! Cross-engine agreement and the statistical contract of Monte Carlo.

use std::f64::consts::PI;

use proptest::prelude::*;
use sublevel::cubature::{integrate_box, integrate_gaussian_quadratic, monte_carlo_sublevel};
use sublevel::duality::dual_integral;
use sublevel::par::run_sequential;
use sublevel::{Engine, MultiPoly, QuadratureSpec, SublevelProblem};

fn quadratic(a: f64, b: f64, c: f64) -> MultiPoly {
    // a x² + 2b xy + c y²
    MultiPoly::from_terms(2, [(vec![2, 0], a), (vec![1, 1], 2.0 * b), (vec![0, 2], c)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gaussian_and_box_agree(
        a in 0.5f64..3.0,
        c in 0.5f64..3.0,
        t in -0.9f64..0.9,
        lambda in 0.3f64..3.0,
        k0 in -2.0f64..2.0,
        k2 in -2.0f64..2.0,
        k11 in -2.0f64..2.0,
    ) {
        let b = t * (a * c).sqrt();
        let g = quadratic(a, b, c);
        let f = MultiPoly::from_terms(2, [(vec![0, 0], k0), (vec![2, 0], k2), (vec![1, 1], k11), (vec![0, 4], 0.5)])
            .unwrap();
        let q = g.quadratic_form().unwrap();
        let gauss = integrate_gaussian_quadratic(
            |x| f.evaluate(x).unwrap(),
            &q,
            lambda,
            &QuadratureSpec::new(Engine::GaussianQuadratic).nodes(16),
        )
        .unwrap();
        let boxed = integrate_box(
            |x| f.evaluate(x).unwrap() * (-lambda * g.evaluate(x).unwrap()).exp(),
            2,
            &QuadratureSpec::new(Engine::BoxGaussLegendre).nodes(48),
        )
        .unwrap();
        // ∫ of a smooth majorant of |f|, since |f| itself has kinks
        let bound = MultiPoly::from_terms(
            2,
            [(vec![0, 0], k0.abs()), (vec![2, 0], k2.abs() + 0.5 * k11.abs()), (vec![0, 2], 0.5 * k11.abs()), (vec![0, 4], 0.5)],
        )
        .unwrap();
        let scale = integrate_gaussian_quadratic(
            |x| bound.evaluate(x).unwrap(),
            &q,
            lambda,
            &QuadratureSpec::new(Engine::GaussianQuadratic).nodes(16),
        )
        .unwrap()
        .value;
        prop_assert!((gauss.value - boxed.value).abs() <= 1e-8 * scale,
            "gauss {} box {}", gauss.value, boxed.value);
    }
}

#[test]
fn gaussian_moment_closed_form() {
    // ∫ x₁² exp(-λ xᵀQx) = (π/λ) det(Q)^{-1/2} · (Q^{-1})₁₁ / (2λ)
    let (a, b, c, lambda) = (2.0, 0.5, 1.0, 0.7);
    let g = quadratic(a, b, c);
    let det: f64 = a * c - b * b;
    let oracle = PI / lambda / det.sqrt() * (c / det) / (2.0 * lambda);
    let f = MultiPoly::from_terms(2, [(vec![2, 0], 1.0)]).unwrap();
    let p = SublevelProblem::polynomial(f, g).unwrap();
    let est = dual_integral(&p, lambda, &QuadratureSpec::default()).unwrap();
    assert_eq!(est.engine, Engine::GaussianQuadratic);
    assert!((est.value - oracle).abs() <= 1e-13 * oracle);
}

#[test]
fn monte_carlo_band_coverage() {
    // disc of radius 1: true value π; nominal 3σ coverage is 99.7%
    let g = |x: &[f64]| x[0] * x[0] + x[1] * x[1];
    let mut covered = 0;
    for seed in 0..50 {
        let spec = QuadratureSpec::new(Engine::MonteCarlo)
            .samples(20_000)
            .seed(seed);
        let est = monte_carlo_sublevel(|_| 1.0, g, 2, 1.0, 1.0, &spec).unwrap();
        let se = est.std_error.unwrap();
        if (est.value - PI).abs() <= 3.0 * se {
            covered += 1;
        }
    }
    assert!(covered >= 45, "covered {covered}/50");
}

#[test]
fn monte_carlo_error_shrinks_like_inverse_root() {
    let g = |x: &[f64]| x[0] * x[0] + x[1] * x[1];
    let se = |n: u64| {
        let spec = QuadratureSpec::new(Engine::MonteCarlo).samples(n).seed(3);
        monte_carlo_sublevel(|_| 1.0, g, 2, 1.0, 1.0, &spec)
            .unwrap()
            .std_error
            .unwrap()
    };
    let ratio = se(10_000) / se(1_000_000);
    assert!((ratio - 10.0).abs() < 0.5, "ratio {ratio}");
}

#[test]
fn sequential_and_parallel_bit_identical() {
    let g = MultiPoly::from_terms(
        2,
        [(vec![4, 0], 1.0), (vec![0, 4], 1.0), (vec![2, 2], -1.925)],
    )
    .unwrap();
    let mc = || {
        let spec = QuadratureSpec::new(Engine::MonteCarlo)
            .samples(300_000)
            .seed(42);
        monte_carlo_sublevel(
            |x| 1.0 + x[0],
            |x| g.evaluate(x).unwrap(),
            2,
            1.0,
            3.0,
            &spec,
        )
        .unwrap()
    };
    let dual = || {
        let p = SublevelProblem::polynomial(MultiPoly::constant(2, 1.0), g.clone()).unwrap();
        dual_integral(&p, 0.8, &QuadratureSpec::default()).unwrap()
    };
    assert_eq!(mc(), run_sequential(mc));
    assert_eq!(dual(), run_sequential(dual));
}
