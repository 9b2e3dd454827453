//! Sparse multivariate polynomials with real coefficients.
//!
//! Terms are kept in graded-lexicographic order of their exponent vectors:
//! first by total degree, then lexicographically. Evaluation and
//! serialization both walk the terms in that order, so results are
//! bit-reproducible across runs and platforms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponent(exps)
    }

    pub fn zero(dim: usize) -> Self {
        Exponent(vec![0; dim])
    }

    /// Total degree, the sum of the exponents.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn monomial(&self, x: &[f64]) -> f64 {
        let mut m = 1.0;
        for (&xi, &e) in x.iter().zip(&self.0) {
            if e != 0 {
                m *= xi.powi(e as i32);
            }
        }
        m
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `dim` real variables.
///
/// No stored coefficient is ever zero, so the zero polynomial has an
/// empty term map.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    dim: usize,
    terms: BTreeMap<Exponent, f64>,
}

impl MultiPoly {
    pub fn zero(dim: usize) -> Self {
        MultiPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(Exponent::zero(dim), c);
        p
    }

    /// `x_i` as a polynomial.
    pub fn variable(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::Input(format!(
                "variable index {i} out of range for dimension {dim}"
            )));
        }
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::from_terms(dim, [(e, 1.0)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs in any order.
    /// Duplicate exponent vectors are summed; zero sums are dropped.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, f64)>,
    {
        if dim == 0 {
            return Err(Error::Input("polynomial dimension must be positive".into()));
        }
        let mut p = Self::zero(dim);
        for (exps, coef) in terms {
            if exps.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: exps.len(),
                });
            }
            if !coef.is_finite() {
                return Err(Error::Input(format!("non-finite coefficient {coef}")));
            }
            p.add_term(Exponent(exps), coef);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: f64) {
        if c == 0.0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, f64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    /// Maximum total degree, or −1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map(|e| e.degree() as i64)
            .unwrap_or(-1)
    }

    /// Evaluates the polynomial at `x`.
    ///
    /// Terms are accumulated per degree group in graded-lex order and the
    /// group sums are then added in ascending degree, so summing the
    /// evaluations of [`homogeneous_components`](Self::homogeneous_components)
    /// reproduces this value bit for bit.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        let mut total = 0.0;
        let mut group = 0.0;
        let mut current: Option<u32> = None;
        for (e, &c) in &self.terms {
            let k = e.degree();
            if current != Some(k) {
                if current.is_some() {
                    total += group;
                }
                group = 0.0;
                current = Some(k);
            }
            group += c * e.monomial(x);
        }
        if current.is_some() {
            total += group;
        }
        total
    }

    /// Splits the polynomial into its homogeneous parts, ascending in degree.
    pub fn homogeneous_components(&self) -> Vec<(u32, MultiPoly)> {
        let mut out: Vec<(u32, MultiPoly)> = Vec::new();
        for (e, &c) in &self.terms {
            let k = e.degree();
            match out.last_mut() {
                Some((deg, comp)) if *deg == k => {
                    comp.terms.insert(e.clone(), c);
                }
                _ => {
                    let mut comp = MultiPoly::zero(self.dim);
                    comp.terms.insert(e.clone(), c);
                    out.push((k, comp));
                }
            }
        }
        out
    }

    /// `Some(k)` when every term has total degree `k`. The zero polynomial
    /// reports `None`.
    pub fn homogeneity_degree(&self) -> Option<u32> {
        let lo = self.terms.keys().next()?.degree();
        let hi = self.terms.keys().next_back()?.degree();
        (lo == hi).then_some(lo)
    }

    /// The symmetric matrix `Q` with `p(x) = xᵀQx`, when `p` is a homogeneous
    /// quadratic. Row-major, `dim × dim`.
    pub fn quadratic_form(&self) -> Option<Vec<f64>> {
        if self.homogeneity_degree() != Some(2) {
            return None;
        }
        let d = self.dim;
        let mut q = vec![0.0; d * d];
        for (e, &c) in &self.terms {
            let idx: Vec<usize> =
                e.0.iter()
                    .enumerate()
                    .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
                    .collect();
            let (i, j) = (idx[0], idx[1]);
            if i == j {
                q[i * d + i] += c;
            } else {
                q[i * d + j] += 0.5 * c;
                q[j * d + i] += 0.5 * c;
            }
        }
        Some(q)
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(-1.0)
    }

    pub fn scale(&self, s: f64) -> MultiPoly {
        let mut out = MultiPoly::zero(self.dim);
        if s == 0.0 {
            return out;
        }
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, &c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &k) in e.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    coef: f64,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyJson {
    dim: usize,
    terms: Vec<TermJson>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| TermJson {
                    coef: c,
                    exps: e.0.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        MultiPoly::from_terms(raw.dim, raw.terms.into_iter().map(|t| (t.exps, t.coef)))
            .map_err(serde::de::Error::custom)
    }
}
