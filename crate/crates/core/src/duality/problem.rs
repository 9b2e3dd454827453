use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::cubature::sphere_minimum;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Opaque point evaluator.
pub type PointFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A function of `dim` variables: structured polynomial or opaque callback.
#[derive(Clone)]
pub enum Function {
    Poly(MultiPoly),
    Opaque { dim: usize, eval: PointFn },
}

impl Function {
    pub fn opaque<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Function::Opaque {
            dim,
            eval: Arc::new(f),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Function::Poly(p) => p.dim(),
            Function::Opaque { dim, .. } => *dim,
        }
    }

    /// Evaluates without a length check; callers pass `dim` coordinates.
    #[inline]
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            Function::Poly(p) => p.eval_unchecked(x),
            Function::Opaque { eval, .. } => eval(x),
        }
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        match self {
            Function::Poly(p) => Some(p),
            Function::Opaque { .. } => None,
        }
    }
}

impl fmt::Debug for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Function::Poly(p) => write!(f, "Poly({p})"),
            Function::Opaque { dim, .. } => write!(f, "Opaque(dim = {dim})"),
        }
    }
}

impl From<MultiPoly> for Function {
    fn from(p: MultiPoly) -> Self {
        Function::Poly(p)
    }
}

/// Integrate `f` over `K_y = {x : g(x) ≤ y}`.
#[derive(Clone, Debug)]
pub struct SublevelProblem {
    dim: usize,
    f: Function,
    g: Function,
    g_degree: Option<f64>,
    f_degree: Option<f64>,
    nonneg_f: bool,
    sphere_min: OnceLock<f64>,
}

/// Every term has even exponents and a positive coefficient.
fn obviously_nonnegative(p: &MultiPoly) -> bool {
    p.terms()
        .all(|(e, c)| c > 0.0 && e.as_slice().iter().all(|k| k % 2 == 0))
}

impl SublevelProblem {
    /// Polynomial `f` and `g`; homogeneity degrees are read off the terms.
    pub fn polynomial(f: MultiPoly, g: MultiPoly) -> Result<Self> {
        if f.dim() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                got: f.dim(),
            });
        }
        let nonneg_f = obviously_nonnegative(&f) || f.is_zero();
        let f_degree = f.homogeneity_degree().map(f64::from);
        let g_degree = g.homogeneity_degree().map(f64::from);
        Ok(SublevelProblem {
            dim: g.dim(),
            f: Function::Poly(f),
            g: Function::Poly(g),
            g_degree,
            f_degree,
            nonneg_f,
            sphere_min: OnceLock::new(),
        })
    }

    /// General problem. Degrees of polynomial parts are detected; opaque
    /// parts start without homogeneity metadata.
    pub fn new(f: Function, g: Function) -> Result<Self> {
        if f.dim() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                got: f.dim(),
            });
        }
        if g.dim() == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        let degree = |h: &Function| {
            h.as_poly()
                .and_then(|p| p.homogeneity_degree())
                .map(f64::from)
        };
        let nonneg_f = f
            .as_poly()
            .map(|p| obviously_nonnegative(p) || p.is_zero())
            .unwrap_or(false);
        Ok(SublevelProblem {
            dim: g.dim(),
            f_degree: degree(&f),
            g_degree: degree(&g),
            f,
            g,
            nonneg_f,
            sphere_min: OnceLock::new(),
        })
    }

    /// Declares `g` positively homogeneous of degree `k`.
    pub fn with_g_degree(mut self, k: f64) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Input(format!(
                "degree of g must be positive, got {k}"
            )));
        }
        if let Some(p) = self.g.as_poly() {
            if p.homogeneity_degree().map(f64::from) != Some(k) {
                return Err(Error::Input(format!(
                    "declared degree {k} does not match the polynomial g"
                )));
            }
        }
        self.g_degree = Some(k);
        self.sphere_min = OnceLock::new();
        Ok(self)
    }

    /// Declares `f` positively homogeneous of degree `k`.
    pub fn with_f_degree(mut self, k: f64) -> Result<Self> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(Error::Input(format!(
                "degree of f must be nonnegative, got {k}"
            )));
        }
        if let Some(p) = self.f.as_poly() {
            if !p.is_zero() && p.homogeneity_degree().map(f64::from) != Some(k) {
                return Err(Error::Input(format!(
                    "declared degree {k} does not match the polynomial f"
                )));
            }
        }
        self.f_degree = Some(k);
        Ok(self)
    }

    /// Caller's assertion that `f ≥ 0` everywhere.
    pub fn assume_nonnegative_f(mut self) -> Self {
        self.nonneg_f = true;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn f(&self) -> &Function {
        &self.f
    }

    pub fn g(&self) -> &Function {
        &self.g
    }

    pub fn f_degree(&self) -> Option<f64> {
        self.f_degree
    }

    pub fn g_degree(&self) -> Option<f64> {
        self.g_degree
    }

    pub fn nonneg_f(&self) -> bool {
        self.nonneg_f
    }

    /// Same `g`, different `f`.
    pub fn with_f(&self, f: Function) -> Result<Self> {
        let mut p = SublevelProblem::new(f, self.g.clone())?;
        p.g_degree = self.g_degree;
        p.sphere_min = self.sphere_min.clone();
        Ok(p)
    }

    /// The volume problem `f = 1` on the same sets.
    pub fn volume_problem(&self) -> Self {
        let mut p = self
            .with_f(Function::Poly(MultiPoly::constant(self.dim, 1.0)))
            .expect("same dimension");
        p.f_degree = Some(0.0);
        p
    }

    /// `(d + d_f) / d_g`, the homogeneity degree of `y ↦ v(y)`.
    pub fn value_exponent(&self) -> Result<f64> {
        match (self.f_degree, self.g_degree) {
            (Some(df), Some(dg)) => Ok((self.dim as f64 + df) / dg),
            _ => Err(Error::Usage(
                "f and g must both be positively homogeneous with known degrees".into(),
            )),
        }
    }

    /// Cached minimum of `g` on the unit sphere.
    pub fn g_sphere_minimum(&self) -> f64 {
        *self
            .sphere_min
            .get_or_init(|| sphere_minimum(self.dim, |x| self.g.eval(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_detected_and_checked() {
        let f = MultiPoly::constant(2, 1.0);
        let g = MultiPoly::from_terms(2, [(vec![2, 0], 1.0), (vec![0, 2], 1.0)]).unwrap();
        let p = SublevelProblem::polynomial(f, g.clone()).unwrap();
        assert_eq!(p.f_degree(), Some(0.0));
        assert_eq!(p.g_degree(), Some(2.0));
        assert!(p.nonneg_f());
        assert_eq!(p.value_exponent().unwrap(), 1.0);

        let opaque = SublevelProblem::new(Function::opaque(2, |_| 1.0), g.into()).unwrap();
        assert!(!opaque.nonneg_f());
        assert!(opaque.clone().with_g_degree(3.0).is_err());
        assert!(opaque.value_exponent().is_err());
        let declared = opaque.with_f_degree(0.0).unwrap();
        assert_eq!(declared.value_exponent().unwrap(), 1.0);
    }

    #[test]
    fn dimension_mismatch() {
        let f = MultiPoly::constant(1, 1.0);
        let g = MultiPoly::from_terms(2, [(vec![2, 0], 1.0)]).unwrap();
        assert!(matches!(
            SublevelProblem::polynomial(f, g),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sign_changing_f_not_flagged_nonnegative() {
        let f = MultiPoly::from_terms(2, [(vec![1, 0], 1.0)]).unwrap();
        let g = MultiPoly::from_terms(2, [(vec![2, 0], 1.0), (vec![0, 2], 1.0)]).unwrap();
        assert!(!SublevelProblem::polynomial(f, g).unwrap().nonneg_f());
    }
}
