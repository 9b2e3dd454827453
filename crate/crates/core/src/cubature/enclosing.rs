//! Bounding boxes for sublevel sets of positively homogeneous functions.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rng::CounterRng;

/// Safety factor applied to the radius bound.
pub const ENCLOSING_MARGIN: f64 = 1.1;

/// Sphere minima at or below this are roundoff on a semidefinite `g`.
pub const SPHERE_MIN_FLOOR: f64 = 1e-12;

const SPHERE_SAMPLES: u64 = 1 << 16;
const STREAM_SPHERE: u64 = 7;

/// Estimated minimum of `g` on the unit sphere of ℝ^d.
///
/// Dense deterministic sampling (an angle grid in 2-D, Gaussian directions
/// otherwise) followed by a shrinking-step local search from the best
/// sample.
pub fn sphere_minimum<G>(dim: usize, g: G) -> f64
where
    G: Fn(&[f64]) -> f64,
{
    match dim {
        0 => f64::NAN,
        1 => g(&[1.0]).min(g(&[-1.0])),
        _ => {
            let mut best = vec![0.0; dim];
            let mut best_val = f64::INFINITY;
            let mut x = vec![0.0; dim];
            let rng = CounterRng::new(0).stream(STREAM_SPHERE);
            for i in 0..SPHERE_SAMPLES {
                if dim == 2 {
                    let t = 2.0 * PI * i as f64 / SPHERE_SAMPLES as f64;
                    x[0] = t.cos();
                    x[1] = t.sin();
                } else {
                    for (j, xj) in x.iter_mut().enumerate() {
                        *xj = rng.normal(i, j as u32);
                    }
                    normalize(&mut x);
                }
                let v = g(&x);
                if v < best_val {
                    best_val = v;
                    best.copy_from_slice(&x);
                }
            }
            refine(&mut best, &mut best_val, &g);
            best_val
        }
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

fn refine<G: Fn(&[f64]) -> f64>(best: &mut [f64], best_val: &mut f64, g: &G) {
    let dim = best.len();
    let mut step = 1e-2;
    let mut trial = vec![0.0; dim];
    while step > 1e-12 {
        let mut improved = false;
        for j in 0..dim {
            for sign in [1.0, -1.0] {
                trial.copy_from_slice(best);
                trial[j] += sign * step;
                normalize(&mut trial);
                let v = g(&trial);
                if v < *best_val {
                    *best_val = v;
                    best.copy_from_slice(&trial);
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
}

/// A radius `R` with `K_y = {g ≤ y} ⊆ [-R, R]^d` for positively homogeneous
/// `g` with positive minimum on the unit sphere, up to the sampling error of
/// that minimum: `R = (y / m̂)^{1/d_g} · 1.1`.
pub fn auto_enclosing_radius(g: &MultiPoly, y: f64) -> Result<f64> {
    let dg = g.homogeneity_degree().filter(|&k| k >= 1).ok_or_else(|| {
        Error::Usage("enclosing radius needs g positively homogeneous of degree >= 1".into())
    })?;
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::Input(format!(
            "level y must be nonnegative, got {y}"
        )));
    }
    let m = sphere_minimum(g.dim(), |x| g.eval_unchecked(x));
    enclosing_radius_from_minimum(m, dg as f64, y)
}

pub(crate) fn enclosing_radius_from_minimum(m: f64, dg: f64, y: f64) -> Result<f64> {
    if !(m > SPHERE_MIN_FLOOR) {
        return Err(Error::UnboundedSublevel { sphere_min: m });
    }
    Ok((y / m).powf(1.0 / dg) * ENCLOSING_MARGIN)
}
