//! One-dimensional Gauss rules.

use std::f64::consts::PI;

/// Nodes and weights of a one-dimensional rule, nodes ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule1d {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Composite rule: this `[-1, 1]` rule copied onto `panels` equal
    /// subintervals of `[-r, r]`.
    pub fn composite(&self, r: f64, panels: usize) -> Rule1d {
        let h = 2.0 * r / panels as f64;
        let mut nodes = Vec::with_capacity(self.len() * panels);
        let mut weights = Vec::with_capacity(self.len() * panels);
        for p in 0..panels {
            let a = -r + h * p as f64;
            for (&t, &w) in self.nodes.iter().zip(&self.weights) {
                nodes.push(a + 0.5 * h * (t + 1.0));
                weights.push(0.5 * h * w);
            }
        }
        Rule1d { nodes, weights }
    }
}

/// P_n(x) and P_{n-1}(x) by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// n-point Gauss-Legendre rule on [-1, 1].
///
/// Roots of P_n by Newton iteration from the Tricomi-style initial guess
/// `cos(π (i + 3/4) / (n + 1/2))`.
pub fn gauss_legendre_rule(n: usize) -> Rule1d {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, pm1) = legendre_pair(n, x);
            dp = nf * (pm1 - x * p) / (1.0 - x * x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-15 {
                let (p, pm1) = legendre_pair(n, x);
                dp = nf * (pm1 - x * p) / (1.0 - x * x);
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule1d { nodes, weights }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (length `diag.len() - 1`), ascending.
///
/// Implicit QL with Wilkinson-style shifts.
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n.max(1));
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..off.len()].copy_from_slice(off);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 100, "tridiagonal QL failed to converge");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    d
}

/// Orthonormal Hermite values p_0..p_n at x (weight e^{-x²}).
fn orthonormal_hermite(n: usize, x: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(PI.powf(-0.25));
    if n >= 1 {
        p.push(2f64.sqrt() * x * p[0]);
    }
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * p[k] - (kf / (kf + 1.0)).sqrt() * p[k - 1];
        p.push(next);
    }
    p
}

/// n-point Gauss-Hermite rule for `∫ φ(u) e^{-u²} du` over ℝ.
///
/// Nodes are eigenvalues of the Jacobi matrix (Golub-Welsch), polished by
/// Newton steps on the orthonormal recurrence; weights come from the
/// Christoffel function `1 / Σ_k p_k(x)²`.
pub fn gauss_hermite_rule(n: usize) -> Rule1d {
    assert!(n >= 1, "Gauss-Hermite rule needs at least one node");
    let diag = vec![0.0; n];
    let off: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let mut nodes = symmetric_tridiagonal_eigenvalues(&diag, &off);

    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let p = orthonormal_hermite(n, *x);
            let dp = (2.0 * n as f64).sqrt() * p[n - 1];
            if dp == 0.0 {
                break;
            }
            let dx = p[n] / dp;
            *x -= dx;
            if dx.abs() < 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
    }
    let mut weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let p = orthonormal_hermite(n - 1, x);
            1.0 / p.iter().map(|v| v * v).sum::<f64>()
        })
        .collect();

    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -x;
        nodes[j] = x;
        let w = 0.5 * (weights[i] + weights[j]);
        weights[i] = w;
        weights[j] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Rule1d { nodes, weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn legendre_small_rules() {
        let r1 = gauss_legendre_rule(1);
        assert_eq!(r1.nodes, vec![0.0]);
        assert!((r1.weights[0] - 2.0).abs() < 1e-15);

        let r2 = gauss_legendre_rule(2);
        let s = 1.0 / 3f64.sqrt();
        assert!((r2.nodes[0] + s).abs() < 1e-15 && (r2.nodes[1] - s).abs() < 1e-15);
        assert!((r2.weights[0] - 1.0).abs() < 1e-15 && (r2.weights[1] - 1.0).abs() < 1e-15);

        let x2: f64 = r2
            .nodes
            .iter()
            .zip(&r2.weights)
            .map(|(x, w)| w * x * x)
            .sum();
        assert!((x2 - 2.0 / 3.0).abs() <= 1e-15);
    }

    #[test]
    fn legendre_weights_positive_sum_two() {
        for n in [3, 7, 16, 33, 64, 128, 200] {
            let r = gauss_legendre_rule(n);
            assert!(r.weights.iter().all(|&w| w > 0.0));
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() <= 1e-14, "n = {n}, sum = {s}");
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn tridiagonal_eigenvalues_known_matrix() {
        // tridiag(-1, 2, -1) has eigenvalues 2 - 2 cos(kπ/(n+1))
        let n = 12;
        let ev = symmetric_tridiagonal_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]);
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * (PI * (k + 1) as f64 / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13);
        }
        assert_eq!(symmetric_tridiagonal_eigenvalues(&[3.0], &[]), vec![3.0]);
    }

    #[test]
    fn hermite_moments() {
        // ∫ u^{2k} e^{-u²} = Γ(k + 1/2)
        for n in [1, 2, 5, 10, 20, 40, 64] {
            let r = gauss_hermite_rule(n);
            let s: f64 = r.weights.iter().sum();
            assert!((s - PI.sqrt()).abs() <= 2e-15 * PI.sqrt(), "n = {n}");
            let mut gamma_half = PI.sqrt();
            for k in 0..n as i32 {
                let m: f64 = r
                    .nodes
                    .iter()
                    .zip(&r.weights)
                    .map(|(x, w)| w * x.powi(2 * k))
                    .sum();
                assert!(
                    ((m - gamma_half) / gamma_half).abs() < 1e-11,
                    "n = {n}, k = {k}"
                );
                gamma_half *= k as f64 + 0.5;
            }
        }
        let r2 = gauss_hermite_rule(2);
        assert!((r2.nodes[1] - 0.5f64.sqrt()).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn legendre_exact_to_degree_2n_minus_1(n in 1usize..30, coefs in prop::collection::vec(-3.0f64..3.0, 60)) {
            let deg = 2 * n - 1;
            let c = &coefs[..=deg.min(59)];
            let rule = gauss_legendre_rule(n);
            let quad: f64 = rule.nodes.iter().zip(&rule.weights).map(|(&x, &w)| {
                w * c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)
            }).sum();
            // exact: odd powers vanish, x^{2j} integrates to 2/(2j+1)
            let exact: f64 = c.iter().enumerate().filter(|(k, _)| k % 2 == 0)
                .map(|(k, &ck)| 2.0 * ck / (k as f64 + 1.0)).sum();
            let scale: f64 = c.iter().enumerate().filter(|(k, _)| k % 2 == 0)
                .map(|(k, &ck)| 2.0 * ck.abs() / (k as f64 + 1.0)).sum();
            prop_assert!((quad - exact).abs() <= 1e-12 * scale.max(exact.abs()));
        }
    }
}
