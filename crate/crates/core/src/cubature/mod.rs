//! Raw integration engines.
//!
//! * tensor Gauss-Legendre on boxes, optionally with an automatically
//!   enlarged radius ([`integrate_box`]),
//! * tensor Gauss-Hermite against Gaussian weights given by a quadratic
//!   form ([`integrate_gaussian_quadratic`]),
//! * hit-or-miss Monte Carlo on sublevel sets ([`monte_carlo_sublevel`]).
//!
//! Cubature sums are reduced in a fixed chunk order and Monte Carlo uses a
//! counter-based generator, so no result depends on the worker count.

mod boxed;
mod enclosing;
mod gaussian;
mod monte_carlo;
mod rules;
mod spec;
mod tensor;

pub use boxed::{integrate_box, integrate_box_from, AutoRadius, MAX_DOUBLINGS};
pub use enclosing::{auto_enclosing_radius, sphere_minimum, ENCLOSING_MARGIN, SPHERE_MIN_FLOOR};
pub use gaussian::{cholesky_upper, integrate_gaussian_quadratic};
pub use monte_carlo::monte_carlo_sublevel;
pub use rules::{
    gauss_hermite_rule, gauss_legendre_rule, symmetric_tridiagonal_eigenvalues, Rule1d,
};
pub use spec::{BoxRadius, Engine, IntegralEstimate, QuadratureSpec};

pub(crate) use enclosing::enclosing_radius_from_minimum;
