//! Integrals of `f` over sublevel sets `K_y = {x : g(x) ≤ y}` through their
//! Laplace-dual whole-space representation
//! `v(y) = ∫_{ℝ^d} f(x) exp(-λ_y g(x)) dx`, with direct Monte Carlo and
//! cubature engines for cross-checking.
//!
//! Modules:
//! * [`poly`]: sparse multivariate polynomials,
//! * [`special`]: Gamma and log-Gamma,
//! * [`cubature`]: Gauss-Legendre boxes, Gaussian weights, Monte Carlo,
//! * [`duality`]: dual values `λ_y`, closed forms, transforms, root finding,
//! * [`simplex`]: exact results on the dilated canonical simplex,
//! * [`mvt`]: mean-value point extraction.
//!
//! With the default `parallel` feature the tensor and Monte Carlo loops run
//! on rayon; results are bit-identical to the sequential build.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cubature;
pub mod duality;
pub mod error;
pub mod mvt;
pub mod par;
pub mod poly;
pub mod rng;
pub mod simplex;
pub mod special;

pub use cubature::{BoxRadius, Engine, IntegralEstimate, QuadratureSpec};
pub use duality::{DualCertificate, Function, Method, SublevelProblem};
pub use error::{Error, Result};
pub use mvt::{mean_value_point, MeanValueResult};
pub use poly::MultiPoly;
pub use simplex::{GeneralizedPolynomial, SimplexMonomial};

/// Formats a float with 17 significant digits in scientific notation.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}
