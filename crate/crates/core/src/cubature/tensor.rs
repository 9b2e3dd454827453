//! Tensor-product rule summation with a worker-count independent reduction.

use super::rules::Rule1d;
use crate::error::{Error, Result};
use crate::par;

const CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug)]
pub(crate) struct TensorSum {
    pub sum: f64,
    pub abs_sum: f64,
    pub points: u64,
}

pub(crate) fn point_count(n: usize, dim: usize, cap: u64) -> Result<u64> {
    let requested = (n as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if requested > cap as u128 {
        return Err(Error::Effort { requested, cap });
    }
    Ok(requested as u64)
}

/// Σ_i w_i φ(T(u_i)) over the `dim`-fold tensor grid of `rule`, where `T`
/// maps grid coordinates `u` to integrand coordinates `x`.
pub(crate) fn tensor_sum<T, F>(
    rule: &Rule1d,
    dim: usize,
    cap: u64,
    transform: T,
    phi: F,
) -> Result<TensorSum>
where
    T: Fn(&[f64], &mut [f64]) + Sync + Send,
    F: Fn(&[f64]) -> f64 + Sync + Send,
{
    let n = rule.len();
    let total = point_count(n, dim, cap)?;
    let partials = par::map_chunks(total, CHUNK, |range| -> Result<(f64, f64)> {
        let mut idx = vec![0usize; dim];
        let mut rem = range.start;
        for slot in idx.iter_mut().rev() {
            *slot = (rem % n as u64) as usize;
            rem /= n as u64;
        }
        let mut u = vec![0.0; dim];
        let mut x = vec![0.0; dim];
        let (mut s, mut a) = (0.0, 0.0);
        for _ in range {
            let mut w = 1.0;
            for (j, &i) in idx.iter().enumerate() {
                u[j] = rule.nodes[i];
                w *= rule.weights[i];
            }
            transform(&u, &mut x);
            let v = phi(&x);
            if !v.is_finite() {
                return Err(Error::Evaluation {
                    point: x.clone(),
                    value: v,
                });
            }
            s += w * v;
            a += w * v.abs();
            // odometer increment, last axis fastest
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
        Ok((s, a))
    });
    let mut out = TensorSum {
        sum: 0.0,
        abs_sum: 0.0,
        points: total,
    };
    for p in partials {
        let (s, a) = p?;
        out.sum += s;
        out.abs_sum += a;
    }
    Ok(out)
}

pub(crate) fn copy_point(u: &[f64], x: &mut [f64]) {
    x.copy_from_slice(u);
}
