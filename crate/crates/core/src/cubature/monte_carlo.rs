//! Hit-or-miss Monte Carlo over sublevel sets.

use super::spec::{Engine, IntegralEstimate, QuadratureSpec};
use crate::error::{Error, Result};
use crate::par;
use crate::rng::CounterRng;

const CHUNK: u64 = 16_384;

/// RNG stream reserved for sublevel Monte Carlo sampling.
pub(crate) const STREAM_SUBLEVEL: u64 = 1;

/// Running count, mean and centred sum of squares.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.n += 1;
        let delta = v - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (v - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + delta * other.n as f64 / n as f64,
            m2: self.m2 + other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64,
        }
    }
}

/// Estimates `∫_{K_y} f` as `(2R)^d · mean(f(X) 1[g(X) ≤ y])` over uniform
/// draws in `[-R, R]^d`.
///
/// The caller asserts `K_y ⊆ [-R, R]^d`. Output is a pure function of the
/// inputs and `spec.seed`, independent of thread count.
pub fn monte_carlo_sublevel<F, G>(
    f: F,
    g: G,
    dim: usize,
    y: f64,
    enclosing_radius: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralEstimate>
where
    F: Fn(&[f64]) -> f64 + Sync + Send,
    G: Fn(&[f64]) -> f64 + Sync + Send,
{
    spec.require(Engine::MonteCarlo)?;
    if dim == 0 {
        return Err(Error::Input("dimension must be positive".into()));
    }
    if !(enclosing_radius > 0.0 && enclosing_radius.is_finite()) {
        return Err(Error::Input(format!(
            "enclosing radius must be positive, got {enclosing_radius}"
        )));
    }
    if y.is_nan() {
        return Err(Error::Input("level y is NaN".into()));
    }
    let rng = CounterRng::new(spec.seed).stream(STREAM_SUBLEVEL);
    let n = spec.sample_count;
    let partials = par::map_chunks(n, CHUNK, |range| -> Result<Moments> {
        let mut x = vec![0.0; dim];
        let mut m = Moments::default();
        for i in range {
            rng.point_in_box(i, enclosing_radius, &mut x);
            let h = if g(&x) <= y {
                let v = f(&x);
                if !v.is_finite() {
                    return Err(Error::Evaluation {
                        point: x.clone(),
                        value: v,
                    });
                }
                v
            } else {
                0.0
            };
            m.push(h);
        }
        Ok(m)
    });
    let mut total = Moments::default();
    for p in partials {
        total = total.merge(p?);
    }
    let volume = (2.0 * enclosing_radius).powi(dim as i32);
    let var = if total.n > 1 {
        total.m2 / (total.n - 1) as f64
    } else {
        0.0
    };
    let std_error = volume * (var / total.n as f64).sqrt();
    Ok(IntegralEstimate {
        value: volume * total.mean,
        std_error: Some(std_error),
        error_estimate: std_error,
        engine: Engine::MonteCarlo,
        effort: n,
        box_radius_used: Some(enclosing_radius),
    })
}
