//! Laplace transform of `v`, from both sides.

use super::dual::dual_integral;
use super::problem::SublevelProblem;
use crate::cubature::{gauss_legendre_rule, QuadratureSpec, Rule1d};
use crate::error::{Error, Result};

/// `ℒ_v(λ) = (1/λ) ∫ f exp(-λ g)`, the whole-space side.
pub fn laplace_of_v(problem: &SublevelProblem, lambda: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(dual_integral(problem, lambda, spec)?.value / lambda)
}

/// `λ ℒ_v(λ)`, the dual map `φ`. Decays toward `v(0) = 0` as `λ → ∞` when
/// `K_0` is negligible.
pub fn initial_value_check(
    problem: &SublevelProblem,
    lambda_large: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(dual_integral(problem, lambda_large, spec)?.value)
}

/// `λ ℒ_v(λ)` at a small `λ`: approaches `v(∞)` when that is finite and
/// grows without bound otherwise. Finiteness is not decided here.
pub fn final_value_check(
    problem: &SublevelProblem,
    lambda_small: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    Ok(dual_integral(problem, lambda_small, spec)?.value)
}

/// `∫_0^Y v(y) e^{-λy} dy` plus a bound on the neglected tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YSideLaplace {
    pub value: f64,
    pub cutoff: f64,
    pub tail_bound: f64,
}

const PANEL_NODES: usize = 20;
const OUTER_PANELS: usize = 48;
const INNER_LEVELS: usize = 40;

/// Laplace transform of a known `v` by quadrature over `y`, for `v` growing
/// at most like `C y^growth`.
///
/// Integrates in `s = √y` on `[0, √Y]` with `λY = 60 + 4·growth`; the panel
/// nearest zero is graded geometrically so fractional powers of `y` are
/// resolved. The tail bound is `C Y^p e^{-λY} / (λ - p/Y)` with `C = v(Y)/Y^p`.
pub fn laplace_by_y_quadrature<V>(v: V, lambda: f64, growth: f64) -> Result<YSideLaplace>
where
    V: Fn(f64) -> f64,
{
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Input(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let p = growth.max(0.0);
    let cutoff = (60.0 + 4.0 * p) / lambda;
    let s_max = cutoff.sqrt();
    let base = gauss_legendre_rule(PANEL_NODES);
    let integrand = |s: f64| 2.0 * s * v(s * s) * (-lambda * s * s).exp();
    let panel = |rule: &Rule1d, a: f64, b: f64| -> f64 {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&t, &w)| half * w * integrand(mid + half * t))
            .sum()
    };

    let h = s_max / OUTER_PANELS as f64;
    let mut value = 0.0;
    // geometric grading inside [0, h], smallest panel first
    let mut edges: Vec<f64> = (0..INNER_LEVELS)
        .rev()
        .map(|k| h * 0.5f64.powi(k as i32))
        .collect();
    edges.insert(0, 0.0);
    for w in edges.windows(2) {
        value += panel(&base, w[0], w[1]);
    }
    for k in 1..OUTER_PANELS {
        value += panel(&base, h * k as f64, h * (k + 1) as f64);
    }

    let vy = v(cutoff).abs();
    let denom = lambda - p / cutoff;
    let tail_bound = if denom > 0.0 {
        vy * (-lambda * cutoff).exp() / denom
    } else {
        f64::INFINITY
    };
    Ok(YSideLaplace {
        value,
        cutoff,
        tail_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::Function;
    use crate::poly::MultiPoly;
    use std::f64::consts::PI;

    fn interval() -> SublevelProblem {
        SublevelProblem::polynomial(
            MultiPoly::constant(1, 1.0),
            MultiPoly::from_terms(1, [(vec![2], 1.0)]).unwrap(),
        )
        .unwrap()
    }

    fn disc() -> SublevelProblem {
        SublevelProblem::polynomial(
            MultiPoly::constant(2, 1.0),
            MultiPoly::from_terms(2, [(vec![2, 0], 1.0), (vec![0, 2], 1.0)]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn whole_space_side() {
        let spec = QuadratureSpec::default();
        assert!((laplace_of_v(&interval(), 1.0, &spec).unwrap() - PI.sqrt()).abs() < 1e-13);
        assert!((laplace_of_v(&disc(), 2.0, &spec).unwrap() - PI / 4.0).abs() < 1e-13);
    }

    #[test]
    fn y_side_against_gamma_moments() {
        // ∫ y^p e^{-λy} = Γ(1+p)/λ^{1+p}
        for (p, lambda) in [(0.5, 1.0), (0.5, 0.5), (1.0, 2.0), (2.3, 1.7), (0.1, 3.0)] {
            let out = laplace_by_y_quadrature(|y: f64| y.powf(p), lambda, p).unwrap();
            let exact = crate::special::gamma(1.0 + p).unwrap() / lambda.powf(1.0 + p);
            assert!(((out.value - exact) / exact).abs() < 1e-10, "p = {p}");
            assert!(out.tail_bound < 1e-20 * exact);
        }
        assert!(laplace_by_y_quadrature(|y| y, 0.0, 1.0).is_err());
    }

    #[test]
    fn value_checks() {
        let spec = QuadratureSpec::default();
        let a = initial_value_check(&interval(), 1e4, &spec).unwrap();
        assert!(((a - (PI / 1e4).sqrt()) / a).abs() < 1e-12);
        let b = initial_value_check(&disc(), 1e6, &spec).unwrap();
        assert!(((b - PI * 1e-6) / b).abs() < 1e-12);
        assert!(initial_value_check(&interval(), 1e6, &spec).unwrap() < a);

        let grow = final_value_check(&interval(), 0.01, &spec).unwrap();
        assert!((grow - (100.0 * PI).sqrt()).abs() < 1e-10);
        assert!(grow > final_value_check(&interval(), 0.1, &spec).unwrap());

        // f = e^{-x²} has a finite total mass: φ(λ) = √(π/(1+λ))
        let finite = SublevelProblem::new(
            Function::opaque(1, |x| (-x[0] * x[0]).exp()),
            MultiPoly::from_terms(1, [(vec![2], 1.0)]).unwrap().into(),
        )
        .unwrap();
        let v = final_value_check(&finite, 0.01, &spec).unwrap();
        assert!((v - (PI / 1.01).sqrt()).abs() < 1e-9);
    }
}
