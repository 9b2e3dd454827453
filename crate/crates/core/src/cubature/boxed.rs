//! Tensor Gauss-Legendre on boxes `[-r, r]^d`.

use super::rules::{gauss_legendre_rule, Rule1d};
use super::spec::{BoxRadius, Engine, IntegralEstimate, QuadratureSpec};
use super::tensor::{copy_point, point_count, tensor_sum};
use crate::error::{Error, Result};

/// Doublings attempted before the automatic radius gives up.
pub const MAX_DOUBLINGS: u32 = 12;

/// Where the automatic radius search starts and the smallest radius it may
/// stop at.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AutoRadius {
    pub initial: f64,
    pub min_final: f64,
}

impl Default for AutoRadius {
    fn default() -> Self {
        AutoRadius {
            initial: 1.0,
            min_final: 0.0,
        }
    }
}

/// Tensor Gauss-Legendre estimate of `∫_{[-r,r]^d} φ`.
///
/// With `BoxRadius::Auto` the radius starts at 1 and doubles until two
/// successive estimates agree to `rel_tol` (relative to `∫|φ|`).
pub fn integrate_box<F>(phi: F, dim: usize, spec: &QuadratureSpec) -> Result<IntegralEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    integrate_box_from(phi, dim, spec, AutoRadius::default())
}

/// As [`integrate_box`], with an explicit starting point for the automatic
/// radius search. Ignored for a fixed radius.
pub fn integrate_box_from<F>(
    phi: F,
    dim: usize,
    spec: &QuadratureSpec,
    start: AutoRadius,
) -> Result<IntegralEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    spec.require(Engine::BoxGaussLegendre)?;
    if dim == 0 {
        return Err(Error::Input("dimension must be positive".into()));
    }
    let n = spec.nodes_per_axis;
    let base = gauss_legendre_rule(n);
    match spec.box_radius {
        BoxRadius::Fixed(r) => {
            let fine = box_sum(&base, r, 1, dim, spec.max_evaluations, &phi)?;
            let coarse_rule = gauss_legendre_rule(n.div_ceil(2));
            let coarse = box_sum(&coarse_rule, r, 1, dim, spec.max_evaluations, &phi)?;
            Ok(IntegralEstimate {
                value: fine.0,
                std_error: None,
                error_estimate: (fine.0 - coarse.0).abs(),
                engine: Engine::BoxGaussLegendre,
                effort: fine.2 + coarse.2,
                box_radius_used: Some(r),
            })
        }
        BoxRadius::Auto => auto_box(&base, dim, spec, start, &phi),
    }
}

fn box_sum<F>(
    base: &Rule1d,
    r: f64,
    panels: usize,
    dim: usize,
    cap: u64,
    phi: &F,
) -> Result<(f64, f64, u64)>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let rule = base.composite(r, panels);
    let s = tensor_sum(&rule, dim, cap, copy_point, phi)?;
    Ok((s.sum, s.abs_sum, s.points))
}

fn auto_box<F>(
    base: &Rule1d,
    dim: usize,
    spec: &QuadratureSpec,
    start: AutoRadius,
    phi: &F,
) -> Result<IntegralEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    if !(start.initial > 0.0 && start.initial.is_finite()) {
        return Err(Error::Input(format!(
            "initial box radius must be positive, got {}",
            start.initial
        )));
    }
    let n = base.len();
    let mut r = start.initial;
    let (mut prev, _, mut effort) = box_sum(base, r, 1, dim, spec.max_evaluations, phi)?;
    for k in 1..=MAX_DOUBLINGS {
        let panels = 1usize << k;
        if point_count(n * panels, dim, spec.max_evaluations).is_err() {
            return Err(Error::NoConvergence {
                doublings: k - 1,
                radius: r,
            });
        }
        r *= 2.0;
        let (value, abs, pts) = box_sum(base, r, panels, dim, spec.max_evaluations, phi)?;
        effort += pts;
        let delta = (value - prev).abs();
        if delta <= spec.rel_tol * abs && r >= start.min_final {
            let (value, resolution, pts) = resolve(base, r, panels, dim, spec, phi, value)?;
            return Ok(IntegralEstimate {
                value,
                std_error: None,
                error_estimate: delta.max(resolution),
                engine: Engine::BoxGaussLegendre,
                effort: effort + pts,
                box_radius_used: Some(r),
            });
        }
        prev = value;
    }
    Err(Error::NoConvergence {
        doublings: MAX_DOUBLINGS,
        radius: r,
    })
}

/// Truncation is settled at radius `r`; now check the node spacing, which
/// the radius doublings kept fixed. Compares against half-size panel rules,
/// then halves the spacing until successive estimates agree. Returns the
/// value, its resolution error and the extra effort.
fn resolve<F>(
    base: &Rule1d,
    r: f64,
    panels: usize,
    dim: usize,
    spec: &QuadratureSpec,
    phi: &F,
    fine: f64,
) -> Result<(f64, f64, u64)>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let n = base.len();
    let half = gauss_legendre_rule(n.div_ceil(2));
    let (coarse, abs, mut effort) = box_sum(&half, r, panels, dim, spec.max_evaluations, phi)?;
    let mut delta = (fine - coarse).abs();
    let mut value = fine;
    let mut panels = panels;
    while delta > spec.rel_tol * abs {
        panels *= 2;
        let (refined, _, pts) = box_sum(base, r, panels, dim, spec.max_evaluations, phi)?;
        effort += pts;
        delta = (refined - value).abs();
        value = refined;
    }
    Ok((value, delta, effort))
}
