//! Integration against Gaussian weights `exp(-λ xᵀQx)`.

use super::rules::gauss_hermite_rule;
use super::spec::{Engine, IntegralEstimate, QuadratureSpec};
use super::tensor::tensor_sum;
use crate::error::{Error, Result};

/// Upper-triangular `S` with `Q = SᵀS`, row-major. Fails unless `Q` is
/// symmetric positive definite.
pub fn cholesky_upper(q: &[f64], dim: usize) -> Result<Vec<f64>> {
    if q.len() != dim * dim {
        return Err(Error::DimensionMismatch {
            expected: dim * dim,
            got: q.len(),
        });
    }
    let scale = q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..dim {
        for j in 0..i {
            if (q[i * dim + j] - q[j * dim + i]).abs() > 1e-12 * scale {
                return Err(Error::Domain(
                    "quadratic form matrix is not symmetric".into(),
                ));
            }
        }
    }
    // lower L with Q = L Lᵀ, then S = Lᵀ
    let mut l = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..=i {
            let mut s = q[i * dim + j];
            for k in 0..j {
                s -= l[i * dim + k] * l[j * dim + k];
            }
            if i == j {
                if !(s > 0.0) {
                    return Err(Error::Domain(
                        "quadratic form is not positive definite".into(),
                    ));
                }
                l[i * dim + i] = s.sqrt();
            } else {
                l[i * dim + j] = s / l[j * dim + j];
            }
        }
    }
    let mut s = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            s[i * dim + j] = l[j * dim + i];
        }
    }
    Ok(s)
}

fn back_substitute(s: &[f64], dim: usize, u: &[f64], scale: f64, x: &mut [f64]) {
    for i in (0..dim).rev() {
        let mut acc = u[i];
        for j in i + 1..dim {
            acc -= s[i * dim + j] * x[j];
        }
        x[i] = acc / s[i * dim + i];
    }
    for xi in x.iter_mut() {
        *xi *= scale;
    }
}

/// Estimates `∫_{ℝ^d} f(x) exp(-λ xᵀQx) dx` with `Q` given row-major.
///
/// Substitutes `x = λ^{-1/2} S⁻¹ u` with `Q = SᵀS`, which turns the weight
/// into `e^{-|u|²}` and the problem into a tensor Gauss-Hermite rule. Exact
/// for polynomial `f` of degree at most `2 n - 1`.
pub fn integrate_gaussian_quadratic<F>(
    f: F,
    q: &[f64],
    lambda: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    spec.require(Engine::GaussianQuadratic)?;
    let dim = (q.len() as f64).sqrt().round() as usize;
    if dim == 0 || dim * dim != q.len() {
        return Err(Error::Input(format!(
            "quadratic form must be a square matrix, got {} entries",
            q.len()
        )));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Input(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let s = cholesky_upper(q, dim)?;
    let det: f64 = (0..dim).map(|i| s[i * dim + i]).product();
    let jacobian = lambda.powf(-0.5 * dim as f64) / det;
    let scale = lambda.powf(-0.5);

    let n = spec.nodes_per_axis;
    let run = |nodes: usize| {
        let rule = gauss_hermite_rule(nodes);
        tensor_sum(
            &rule,
            dim,
            spec.max_evaluations,
            |u, x| back_substitute(&s, dim, u, scale, x),
            &f,
        )
    };
    let fine = run(n)?;
    let coarse = run(n.div_ceil(2))?;
    Ok(IntegralEstimate {
        value: jacobian * fine.sum,
        std_error: None,
        error_estimate: jacobian * (fine.sum - coarse.sum).abs(),
        engine: Engine::GaussianQuadratic,
        effort: fine.points + coarse.points,
        box_radius_used: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::new(Engine::GaussianQuadratic).nodes(16)
    }

    #[test]
    fn closed_form_examples() {
        let est =
            integrate_gaussian_quadratic(|_| 1.0, &[1.0, 0.0, 0.0, 1.0], 1.0, &spec()).unwrap();
        assert!(((est.value - PI) / PI).abs() <= 1e-12);

        let est = integrate_gaussian_quadratic(|_| 1.0, &[1.0], PI / 4.0, &spec()).unwrap();
        assert!(((est.value - 2.0) / 2.0).abs() <= 1e-12);

        let est =
            integrate_gaussian_quadratic(|x| x[0] * x[0], &[1.0, 0.0, 0.0, 1.0], 1.0, &spec())
                .unwrap();
        assert!(((est.value - PI / 2.0) / (PI / 2.0)).abs() <= 1e-12);
    }

    #[test]
    fn correlated_form() {
        // Q = [[2, 1], [1, 2]], det 3: ∫ e^{-xᵀQx} = π / √3
        let q = [2.0, 1.0, 1.0, 2.0];
        let est = integrate_gaussian_quadratic(|_| 1.0, &q, 1.0, &spec()).unwrap();
        assert!((est.value - PI / 3f64.sqrt()).abs() < 1e-13);
        // E[x1 x2] under covariance (2Q)^{-1} is -1/6
        let est = integrate_gaussian_quadratic(|x| x[0] * x[1], &q, 1.0, &spec()).unwrap();
        assert!((est.value - (-1.0 / 6.0) * PI / 3f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn rejects_indefinite_and_asymmetric() {
        let e = integrate_gaussian_quadratic(|_| 1.0, &[1.0, 0.0, 0.0, -1.0], 1.0, &spec());
        assert!(matches!(e, Err(Error::Domain(_))));
        let e = integrate_gaussian_quadratic(|_| 1.0, &[1.0, 0.5, 0.0, 1.0], 1.0, &spec());
        assert!(matches!(e, Err(Error::Domain(_))));
        let e = integrate_gaussian_quadratic(|_| 1.0, &[1.0, 0.0, 0.0], 1.0, &spec());
        assert!(matches!(e, Err(Error::Input(_))));
    }
}
