//! Closed forms on the dilated canonical simplex `{x ≥ 0 : Σ x_i ≤ y}`.
//!
//! For `f = Π x_i^{α_i}` (each `α_i > -1`, real) the multivariate Laplace
//! transform is a product of Gamma ratios and `v(y)` follows without any
//! quadrature. Everything is accumulated in log space so large total
//! exponents do not overflow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::log_gamma;

/// `coef · Π x_i^{α_i}` on the positive orthant, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMonomial")]
pub struct SimplexMonomial {
    pub coef: f64,
    pub alpha: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMonomial {
    coef: f64,
    alpha: Vec<f64>,
}

impl TryFrom<RawMonomial> for SimplexMonomial {
    type Error = Error;
    fn try_from(raw: RawMonomial) -> Result<Self> {
        SimplexMonomial::new(raw.alpha, raw.coef)
    }
}

fn check_alpha(alpha: &[f64]) -> Result<()> {
    if alpha.is_empty() {
        return Err(Error::Input("exponent vector must be nonempty".into()));
    }
    if let Some(a) = alpha.iter().find(|a| !(**a > -1.0 && a.is_finite())) {
        return Err(Error::Input(format!(
            "every exponent must exceed -1, got {a}"
        )));
    }
    Ok(())
}

impl SimplexMonomial {
    pub fn new(alpha: Vec<f64>, coef: f64) -> Result<Self> {
        check_alpha(&alpha)?;
        if !coef.is_finite() {
            return Err(Error::Input(format!("non-finite coefficient {coef}")));
        }
        Ok(SimplexMonomial { coef, alpha })
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    /// `d + Σ α_i`, the degree of `y ↦ v(y)`.
    pub fn value_exponent(&self) -> f64 {
        self.dim() as f64 + self.alpha.iter().sum::<f64>()
    }

    /// Pointwise value with the zero extension off the orthant.
    pub fn eval(&self, x: &[f64]) -> f64 {
        if x.iter().any(|&xi| xi < 0.0) {
            return 0.0;
        }
        self.coef
            * x.iter()
                .zip(&self.alpha)
                .map(|(&xi, &a)| if a == 0.0 { 1.0 } else { xi.powf(a) })
                .product::<f64>()
    }
}

/// A finite sum of [`SimplexMonomial`]s of one dimension.
#[derive(Clone, Debug, PartialEq, Default, Serialize)]
pub struct GeneralizedPolynomial {
    terms: Vec<SimplexMonomial>,
}

impl GeneralizedPolynomial {
    pub fn new(terms: Vec<SimplexMonomial>) -> Result<Self> {
        if let Some(first) = terms.first() {
            let d = first.dim();
            if let Some(t) = terms.iter().find(|t| t.dim() != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: t.dim(),
                });
            }
        }
        Ok(GeneralizedPolynomial { terms })
    }

    pub fn terms(&self) -> &[SimplexMonomial] {
        &self.terms
    }

    pub fn dim(&self) -> Option<usize> {
        self.terms.first().map(SimplexMonomial::dim)
    }

    pub fn scale(&self, c: f64) -> Self {
        GeneralizedPolynomial {
            terms: self
                .terms
                .iter()
                .map(|t| SimplexMonomial {
                    coef: c * t.coef,
                    alpha: t.alpha.clone(),
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }
}

fn sum_log_gamma(alpha: &[f64]) -> Result<f64> {
    alpha.iter().map(|a| log_gamma(1.0 + a)).sum()
}

/// `Π Γ(1+α_i) / γ_i^{1+α_i}`, the Laplace transform of `Π x_i^{α_i}` over
/// the orthant at `γ`.
pub fn multivariate_laplace_monomial(alpha: &[f64], gamma: &[f64]) -> Result<f64> {
    check_alpha(alpha)?;
    if gamma.len() != alpha.len() {
        return Err(Error::DimensionMismatch {
            expected: alpha.len(),
            got: gamma.len(),
        });
    }
    if let Some(g) = gamma.iter().find(|g| !(**g > 0.0 && g.is_finite())) {
        return Err(Error::Input(format!(
            "every gamma_i must be positive, got {g}"
        )));
    }
    let mut log = 0.0;
    for (&a, &g) in alpha.iter().zip(gamma) {
        log += log_gamma(1.0 + a)? - (1.0 + a) * g.ln();
    }
    Ok(log.exp())
}

/// `v(y) = y^{d+Σα} Π Γ(1+α_i) / Γ(1+d+Σα)`.
pub fn simplex_monomial_v(alpha: &[f64], y: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::Input(format!("y must be nonnegative, got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let p = alpha.len() as f64 + alpha.iter().sum::<f64>();
    Ok((sum_log_gamma(alpha)? - log_gamma(1.0 + p)? + p * y.ln()).exp())
}

/// `ℒ_v(λ) = Π Γ(1+α_i) / λ^{1+d+Σα}`.
pub fn simplex_laplace_of_v(alpha: &[f64], lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Input(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let gamma = vec![lambda; alpha.len()];
    Ok(multivariate_laplace_monomial(alpha, &gamma)? / lambda)
}

/// Dual value of a single monomial: `λ_y = Γ(1+p)^{1/p} / y`, `p = d + Σα`.
pub fn simplex_lambda_y(alpha: &[f64], y: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Input(format!("y must be positive, got {y}")));
    }
    let p = alpha.len() as f64 + alpha.iter().sum::<f64>();
    Ok((log_gamma(1.0 + p)? / p).exp() / y)
}

pub fn generalized_polynomial_v(p: &GeneralizedPolynomial, y: f64) -> Result<f64> {
    let mut total = 0.0;
    for t in &p.terms {
        total += t.coef * simplex_monomial_v(&t.alpha, y)?;
    }
    Ok(total)
}

pub fn generalized_polynomial_laplace(p: &GeneralizedPolynomial, lambda: f64) -> Result<f64> {
    let mut total = 0.0;
    for t in &p.terms {
        total += t.coef * simplex_laplace_of_v(&t.alpha, lambda)?;
    }
    Ok(total)
}

/// `λ_y` with `λ ℒ_v(λ) = v(y)` for a generalized polynomial with positive
/// coefficients. Closed form for one term, geometric bisection otherwise.
pub fn generalized_polynomial_lambda_y(p: &GeneralizedPolynomial, y: f64) -> Result<f64> {
    match p.terms.as_slice() {
        [] => Err(Error::Usage(
            "empty generalized polynomial has no dual value".into(),
        )),
        [t] if t.coef > 0.0 => simplex_lambda_y(&t.alpha, y),
        terms => {
            if terms.iter().any(|t| t.coef <= 0.0) {
                return Err(Error::Usage(
                    "dual value needs positive coefficients for monotonicity".into(),
                ));
            }
            let target = generalized_polynomial_v(p, y)?;
            let phi = |l: f64| generalized_polynomial_laplace(p, l).map(|v| v * l);
            // bracket from the single-term values, which straddle the root
            let mut lo = f64::INFINITY;
            let mut hi: f64 = 0.0;
            for t in terms {
                let l = simplex_lambda_y(&t.alpha, y)?;
                lo = lo.min(l);
                hi = hi.max(l);
            }
            lo *= 0.5;
            hi *= 2.0;
            while phi(lo)? < target {
                lo *= 0.5;
            }
            while phi(hi)? > target {
                hi *= 2.0;
            }
            for _ in 0..200 {
                let mid = (lo * hi).sqrt();
                if phi(mid)? > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi / lo - 1.0 <= 1e-14 {
                    break;
                }
            }
            Ok((lo * hi).sqrt())
        }
    }
}
