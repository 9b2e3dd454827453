//! Laplace-dual representations of `v(y) = ∫_{g ≤ y} f`.
//!
//! For `λ > 0` the dual map `φ(λ) = ∫_{ℝ^d} f exp(-λ g)` equals `λ ℒ_v(λ)`,
//! and each `y > 0` has a dual value `λ_y` with `v(y) = φ(λ_y)`. When `f`
//! and `g` are positively homogeneous, `y·λ_y` is the constant
//! [`dual_constant`]; otherwise `λ_y` can only be recovered from a known
//! target value with [`find_lambda_for_target`], which makes that path a
//! verification tool rather than an evaluator.

mod certificate;
mod dual;
mod problem;
mod root;
mod transform;

pub use certificate::{DualCertificate, Method};
pub use dual::{
    dual_constant, dual_integral, lambda_y_homogeneous, v_closed_form, v_dual_homogeneous,
    v_homogeneous_closed_form, v_polynomial, v_with_lower_bound, LowerBoundSplit, PolynomialValue,
    TAIL_EXPONENT,
};
pub use problem::{Function, PointFn, SublevelProblem};
pub use root::{find_lambda_for_target, LambdaSearch, LAMBDA_REL_TOL, MAX_BISECTIONS};
pub use transform::{
    final_value_check, initial_value_check, laplace_by_y_quadrature, laplace_of_v, YSideLaplace,
};
