//! Recovering `λ_y` from a known target value by bisection on the dual map.

use super::dual::dual_integral;
use super::problem::SublevelProblem;
use crate::cubature::QuadratureSpec;
use crate::error::{Error, Result};

pub const MAX_BISECTIONS: usize = 200;
/// Relative width of the λ-bracket at which bisection stops.
pub const LAMBDA_REL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaSearch {
    pub lambda: f64,
    /// `φ(λ)` at the returned `λ`.
    pub value: f64,
    pub residual: f64,
    pub error_estimate: f64,
    pub iterations: usize,
}

/// Finds `λ*` with `φ(λ*) = target` for the nonincreasing map
/// `φ(λ) = ∫ f exp(-λ g)`, bisecting geometrically inside `bracket`.
///
/// `φ` is only monotone for `f, g ≥ 0`; evaluations that step outside the
/// bracket values by more than the engine error are reported as
/// [`Error::EvaluationNoise`].
pub fn find_lambda_for_target(
    problem: &SublevelProblem,
    target: f64,
    bracket: (f64, f64),
    spec: &QuadratureSpec,
) -> Result<LambdaSearch> {
    let (mut lo, mut hi) = bracket;
    if !(target > 0.0 && target.is_finite()) {
        return Err(Error::Input(format!(
            "target must be positive, got {target}"
        )));
    }
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::Input(format!("invalid bracket ({lo}, {hi})")));
    }
    let phi = |l: f64| dual_integral(problem, l, spec);
    let at_lo = phi(lo)?;
    let at_hi = phi(hi)?;
    let (mut phi_lo, mut phi_hi) = (at_lo.value, at_hi.value);
    if !(phi_hi <= target && target <= phi_lo) {
        return Err(Error::Bracket {
            lo,
            hi,
            phi_lo,
            phi_hi,
            target,
        });
    }
    let mut noise = at_lo.error_estimate.max(at_hi.error_estimate);

    let mut best = LambdaSearch {
        lambda: lo,
        value: phi_lo,
        residual: (phi_lo - target).abs(),
        error_estimate: at_lo.error_estimate,
        iterations: 0,
    };
    for it in 1..=MAX_BISECTIONS {
        let mid = (lo * hi).sqrt();
        let est = phi(mid)?;
        noise = noise.max(est.error_estimate);
        let slack = noise + 1e-12 * target;
        if est.value > phi_lo + slack || est.value < phi_hi - slack {
            return Err(Error::EvaluationNoise { lambda: mid });
        }
        let residual = (est.value - target).abs();
        best = LambdaSearch {
            lambda: mid,
            value: est.value,
            residual,
            error_estimate: est.error_estimate,
            iterations: it,
        };
        if residual <= est.error_estimate {
            break;
        }
        if est.value > target {
            lo = mid;
            phi_lo = est.value;
        } else {
            hi = mid;
            phi_hi = est.value;
        }
        if hi / lo - 1.0 <= LAMBDA_REL_TOL {
            break;
        }
    }
    if best.residual > (spec.rel_tol * target).max(noise + 1e-12 * target) {
        return Err(Error::EvaluationNoise {
            lambda: best.lambda,
        });
    }
    Ok(best)
}
