//! Mean-value points: `x* ∈ K_y` with `f(x*) vol(K_y) = v(y)`.
//!
//! The target mean `c = v(y) / vol(K_y)` comes from the dual pipeline when
//! `g` is homogeneous, else from Monte Carlo with a shared seed so the two
//! errors correlate. Members of `K_y` on either side of `c` are found by
//! rejection sampling, then `f` is bisected along the segment joining them.
//! The segment may leave a nonconvex `K_y`; such pairs are discarded and
//! resampled.

use serde::Serialize;

use crate::cubature::{
    enclosing_radius_from_minimum, monte_carlo_sublevel, BoxRadius, Engine, QuadratureSpec,
};
use crate::duality::{v_dual_homogeneous, v_polynomial, SublevelProblem};
use crate::error::{Error, Result};
use crate::rng::CounterRng;

pub const MAX_PAIRS: usize = 50;
pub const MAX_BISECTION_STEPS: usize = 200;
/// Rejection draws allowed while looking for one bracketing pair.
pub const MAX_DRAWS_PER_PAIR: u64 = 1 << 21;

const STREAM_MVT: u64 = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeanValueResult {
    pub point: Vec<f64>,
    pub f_at_point: f64,
    pub target_mean: f64,
    pub residual: f64,
    pub attempts: usize,
}

/// `v(y)` and `vol(K_y)` through one shared pipeline.
fn value_and_volume(
    problem: &SublevelProblem,
    y: f64,
    spec: &QuadratureSpec,
    radius: f64,
) -> Result<(f64, f64)> {
    if problem.g_degree().is_some() {
        let vol = v_dual_homogeneous(&problem.volume_problem(), y, spec)?.v_value;
        let v = if problem.f_degree().is_some() {
            v_dual_homogeneous(problem, y, spec)?.v_value
        } else if problem.f().as_poly().is_some() {
            v_polynomial(problem, y, spec)?.value
        } else {
            direct(problem, y, spec, radius, false)?
        };
        return Ok((v, vol));
    }
    Ok((
        direct(problem, y, spec, radius, false)?,
        direct(problem, y, spec, radius, true)?,
    ))
}

fn direct(
    problem: &SublevelProblem,
    y: f64,
    spec: &QuadratureSpec,
    radius: f64,
    volume: bool,
) -> Result<f64> {
    let mc = spec.with_engine(Engine::MonteCarlo);
    let g = problem.g();
    let est = if volume {
        monte_carlo_sublevel(|_| 1.0, |x| g.eval(x), problem.dim(), y, radius, &mc)?
    } else {
        let f = problem.f();
        monte_carlo_sublevel(|x| f.eval(x), |x| g.eval(x), problem.dim(), y, radius, &mc)?
    };
    Ok(est.value)
}

/// Half-width of a box holding `K_y`.
pub(crate) fn sampling_radius(
    problem: &SublevelProblem,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    match (problem.g_degree(), spec.box_radius) {
        (_, BoxRadius::Fixed(r)) => Ok(r),
        (Some(dg), BoxRadius::Auto) => {
            enclosing_radius_from_minimum(problem.g_sphere_minimum(), dg, y)
        }
        (None, BoxRadius::Auto) => Err(Error::Usage(
            "g is not homogeneous: an explicit box_radius enclosing K_y is required".into(),
        )),
    }
}

/// Locates a mean-value point of `f` on `K_y`.
///
/// `K_y` is assumed connected; on repeated failure the best candidate seen
/// is returned inside [`Error::ExtractionFailure`].
pub fn mean_value_point(
    problem: &SublevelProblem,
    y: f64,
    spec: &QuadratureSpec,
) -> Result<MeanValueResult> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Input(format!("y must be positive, got {y}")));
    }
    spec.validate()?;
    let radius = sampling_radius(problem, y, spec)?;
    let (v, vol) = value_and_volume(problem, y, spec, radius)?;
    if !(vol > 0.0) {
        return Err(Error::Domain(format!("K_y has no volume (estimate {vol})")));
    }
    let c = v / vol;
    let tol = spec.rel_tol * (1.0 + c.abs());

    let dim = problem.dim();
    let f = problem.f();
    let g = problem.g();
    let rng = CounterRng::new(spec.seed).stream(STREAM_MVT);
    let mut counter = 0u64;
    let mut x = vec![0.0; dim];
    let mut best: Option<MeanValueResult> = None;

    let candidate = |point: &[f64], fx: f64, attempts: usize| MeanValueResult {
        point: point.to_vec(),
        f_at_point: fx,
        target_mean: c,
        residual: (fx - c).abs(),
        attempts,
    };
    let keep_best = |best: &mut Option<MeanValueResult>, cand: MeanValueResult| {
        if best.as_ref().is_none_or(|b| cand.residual < b.residual) {
            *best = Some(cand);
        }
    };

    for attempt in 1..=MAX_PAIRS {
        let mut below: Option<(Vec<f64>, f64)> = None;
        let mut above: Option<(Vec<f64>, f64)> = None;
        let draw_limit = counter + MAX_DRAWS_PER_PAIR;
        while (below.is_none() || above.is_none()) && counter < draw_limit {
            rng.point_in_box(counter, radius, &mut x);
            counter += 1;
            if g.eval(&x) > y {
                continue;
            }
            let fx = f.eval(&x);
            if (fx - c).abs() <= tol {
                return Ok(candidate(&x, fx, attempt));
            }
            keep_best(&mut best, candidate(&x, fx, attempt));
            if fx < c && below.is_none() {
                below = Some((x.clone(), fx));
            } else if fx > c && above.is_none() {
                above = Some((x.clone(), fx));
            }
        }
        let (Some((lo_pt, _)), Some((hi_pt, _))) = (below, above) else {
            break;
        };

        let (mut t_lo, mut t_hi) = (0.0f64, 1.0f64);
        let mut p = vec![0.0; dim];
        for _ in 0..MAX_BISECTION_STEPS {
            let t = 0.5 * (t_lo + t_hi);
            for j in 0..dim {
                p[j] = lo_pt[j] + t * (hi_pt[j] - lo_pt[j]);
            }
            if g.eval(&p) > y {
                break;
            }
            let fp = f.eval(&p);
            let cand = candidate(&p, fp, attempt);
            if cand.residual <= tol {
                return Ok(cand);
            }
            keep_best(&mut best, cand);
            if fp < c {
                t_lo = t;
            } else {
                t_hi = t;
            }
        }
    }

    let best = best.unwrap_or_else(|| candidate(&vec![f64::NAN; dim], f64::NAN, MAX_PAIRS));
    Err(Error::ExtractionFailure {
        attempts: MAX_PAIRS,
        best: Box::new(best),
    })
}
