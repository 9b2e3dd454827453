//! Whole-space dual integrals and the homogeneous closed forms.

use super::certificate::{DualCertificate, Method};
use super::problem::{Function, SublevelProblem};
use crate::cubature::{
    cholesky_upper, integrate_box_from, integrate_gaussian_quadratic, AutoRadius, BoxRadius,
    Engine, IntegralEstimate, QuadratureSpec,
};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::special::{gamma, log_gamma};

/// Tail level `λ m̂ r^{d_g}` the automatic box must reach before it may stop.
pub const TAIL_EXPONENT: f64 = 40.0;

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::Input(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

/// `Γ(1 + (d + d_f)/d_g)^{d_g/(d + d_f)}`, the constant value of `y·λ_y`
/// for positively homogeneous `f` and `g`.
pub fn dual_constant(dim: usize, d_f: f64, d_g: f64) -> Result<f64> {
    if dim == 0 {
        return Err(Error::Input("dimension must be positive".into()));
    }
    if !(d_f >= 0.0) {
        return Err(Error::Input(format!("d_f must be nonnegative, got {d_f}")));
    }
    check_positive("d_g", d_g)?;
    let s = dim as f64 + d_f;
    if s == d_g {
        return Ok(1.0);
    }
    let p = s / d_g;
    Ok((log_gamma(1.0 + p)? / p).exp())
}

/// Dual variable `λ_y` for positively homogeneous `f` (degree `d_f`) and `g`
/// (degree `d_g`) in dimension `d`.
pub fn lambda_y_homogeneous(dim: usize, d_f: f64, d_g: f64, y: f64) -> Result<f64> {
    check_positive("y", y)?;
    Ok(dual_constant(dim, d_f, d_g)? / y)
}

/// `v(y) = y^p ∫f e^{-g} / Γ(1 + p)` with `p = (d + d_f)/d_g`.
pub fn v_homogeneous_closed_form(
    problem: &SublevelProblem,
    base_integral: f64,
    y: f64,
) -> Result<f64> {
    let p = problem.value_exponent()?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::Input(format!("y must be nonnegative, got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    closed_form_scale(p, y).map(|s| s * base_integral)
}

/// `y^p / Γ(1 + p)`, in log space once Γ would overflow.
pub(crate) fn closed_form_scale(p: f64, y: f64) -> Result<f64> {
    if 1.0 + p < 170.0 {
        Ok(y.powf(p) / gamma(1.0 + p)?)
    } else {
        Ok((p * y.ln() - log_gamma(1.0 + p)?).exp())
    }
}

fn gaussian_form(problem: &SublevelProblem) -> Option<Vec<f64>> {
    let f_is_poly = problem.f().as_poly().is_some();
    let q = problem.g().as_poly()?.quadratic_form()?;
    (f_is_poly && cholesky_upper(&q, problem.dim()).is_ok()).then_some(q)
}

/// Estimates `∫_{ℝ^d} f(x) exp(-λ g(x)) dx`.
///
/// Uses tensor Gauss-Hermite when `g` is a positive definite quadratic form
/// and `f` a polynomial; otherwise tensor Gauss-Legendre on an automatically
/// enlarged box (or the fixed box from the quadrature spec). A negative
/// value of `g` at any node is reported as [`Error::NegativeConstraint`].
pub fn dual_integral(
    problem: &SublevelProblem,
    lambda: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate> {
    check_positive("lambda", lambda)?;
    spec.validate()?;
    let f = problem.f();
    let g = problem.g();

    if let Some(q) = gaussian_form(problem) {
        let sub = spec.with_engine(Engine::GaussianQuadratic);
        return integrate_gaussian_quadratic(|x| f.eval(x), &q, lambda, &sub);
    }

    let sub = spec.with_engine(Engine::BoxGaussLegendre);
    let start = match (spec.box_radius, problem.g_degree()) {
        (BoxRadius::Auto, Some(dg)) => {
            let m = problem.g_sphere_minimum();
            if !(m > crate::cubature::SPHERE_MIN_FLOOR) {
                return Err(Error::UnboundedSublevel { sphere_min: m });
            }
            AutoRadius {
                initial: (1.0 / (lambda * m)).powf(1.0 / dg),
                min_final: (TAIL_EXPONENT / (lambda * m)).powf(1.0 / dg),
            }
        }
        _ => AutoRadius::default(),
    };
    let integrand = |x: &[f64]| {
        let gx = g.eval(x);
        if gx < 0.0 {
            return f64::NAN;
        }
        f.eval(x) * (-lambda * gx).exp()
    };
    integrate_box_from(integrand, problem.dim(), &sub, start).map_err(|e| match e {
        Error::Evaluation { point, value } => {
            let gx = g.eval(&point);
            if gx < 0.0 {
                Error::NegativeConstraint { point, value: gx }
            } else {
                Error::Evaluation { point, value }
            }
        }
        other => other,
    })
}

fn method_for(est: &IntegralEstimate) -> Method {
    match est.engine {
        Engine::GaussianQuadratic => Method::DualGaussian,
        _ => Method::DualCubature,
    }
}

/// `v(y)` as the dual integral at the explicit `λ_y` of the homogeneous case.
pub fn v_dual_homogeneous(
    problem: &SublevelProblem,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<DualCertificate> {
    check_positive("y", y)?;
    let (df, dg) = match (problem.f_degree(), problem.g_degree()) {
        (Some(df), Some(dg)) => (df, dg),
        _ => {
            return Err(Error::Usage(
                "dual evaluation needs f and g positively homogeneous".into(),
            ))
        }
    };
    let lambda_y = lambda_y_homogeneous(problem.dim(), df, dg, y)?;
    let est = dual_integral(problem, lambda_y, spec)?;
    Ok(DualCertificate {
        y,
        lambda_y,
        v_value: est.value,
        method: method_for(&est),
        error_estimate: est.error_estimate,
    })
}

/// `v(y)` from the base integral `∫ f e^{-g}` and the closed form in `y`.
pub fn v_closed_form(
    problem: &SublevelProblem,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<DualCertificate> {
    check_positive("y", y)?;
    let p = problem.value_exponent()?;
    let base = dual_integral(problem, 1.0, spec)?;
    let scale = closed_form_scale(p, y)?;
    let (df, dg) = (problem.f_degree().unwrap(), problem.g_degree().unwrap());
    Ok(DualCertificate {
        y,
        lambda_y: lambda_y_homogeneous(problem.dim(), df, dg, y)?,
        v_value: scale * base.value,
        method: Method::ClosedFormHomogeneous,
        error_estimate: scale * base.error_estimate,
    })
}

/// Value of a polynomial `f` split into homogeneous components.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialValue {
    pub value: f64,
    pub certificates: Vec<DualCertificate>,
}

impl PolynomialValue {
    pub fn error_estimate(&self) -> f64 {
        self.certificates.iter().map(|c| c.error_estimate).sum()
    }
}

/// `v(y) = Σ_k ∫ f_k exp(-λ_{y,k} g)` over the homogeneous parts `f_k` of a
/// polynomial `f`. `f` may change sign.
pub fn v_polynomial(
    problem: &SublevelProblem,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<PolynomialValue> {
    check_positive("y", y)?;
    let f = problem
        .f()
        .as_poly()
        .ok_or_else(|| Error::Usage("polynomial decomposition needs a polynomial f".into()))?;
    if problem.g_degree().is_none() {
        return Err(Error::Usage(
            "polynomial decomposition needs g positively homogeneous".into(),
        ));
    }
    let mut value = 0.0;
    let mut certificates = Vec::new();
    for (k, fk) in f.homogeneous_components() {
        let sub = problem
            .with_f(Function::Poly(fk))?
            .with_f_degree(k as f64)?;
        let cert = v_dual_homogeneous(&sub, y, spec)?;
        value += cert.v_value;
        certificates.push(cert);
    }
    Ok(PolynomialValue {
        value,
        certificates,
    })
}

/// `v(y) = τ vol(K_y) + ∫_{K_y} (f - τ)` for a polynomial `f ≥ τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerBoundSplit {
    pub tau: f64,
    pub value: f64,
    pub volume: DualCertificate,
    pub shifted: PolynomialValue,
}

/// Evaluates `v(y)` through two integrals of nonnegative functions, given a
/// caller-supplied lower bound `τ ≤ f`. The bound is trusted, not checked.
pub fn v_with_lower_bound(
    problem: &SublevelProblem,
    tau: f64,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<LowerBoundSplit> {
    if !tau.is_finite() {
        return Err(Error::Input(format!(
            "lower bound must be finite, got {tau}"
        )));
    }
    let f = problem
        .f()
        .as_poly()
        .ok_or_else(|| Error::Usage("lower-bound split needs a polynomial f".into()))?;
    let volume = v_dual_homogeneous(&problem.volume_problem(), y, spec)?;
    let shifted_f = f.add(&MultiPoly::constant(problem.dim(), -tau))?;
    let shifted_problem = problem
        .with_f(Function::Poly(shifted_f))?
        .assume_nonnegative_f();
    let shifted = v_polynomial(&shifted_problem, y, spec)?;
    Ok(LowerBoundSplit {
        tau,
        value: tau * volume.v_value + shifted.value,
        volume,
        shifted,
    })
}
