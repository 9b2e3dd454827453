use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    BoxGaussLegendre,
    GaussianQuadratic,
    MonteCarlo,
}

impl Engine {
    pub fn tag(self) -> &'static str {
        match self {
            Engine::BoxGaussLegendre => "box-gauss-legendre",
            Engine::GaussianQuadratic => "gaussian-quadratic",
            Engine::MonteCarlo => "monte-carlo",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Half-width of the integration box: a fixed value or `"auto"`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum BoxRadius {
    #[default]
    Auto,
    Fixed(f64),
}

impl Serialize for BoxRadius {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            BoxRadius::Auto => s.serialize_str("auto"),
            BoxRadius::Fixed(r) => s.serialize_f64(*r),
        }
    }
}

impl<'de> Deserialize<'de> for BoxRadius {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RadiusVisitor;
        impl Visitor<'_> for RadiusVisitor {
            type Value = BoxRadius;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive number or \"auto\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<BoxRadius, E> {
                if v == "auto" {
                    Ok(BoxRadius::Auto)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<BoxRadius, E> {
                Ok(BoxRadius::Fixed(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<BoxRadius, E> {
                Ok(BoxRadius::Fixed(v as f64))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<BoxRadius, E> {
                Ok(BoxRadius::Fixed(v as f64))
            }
        }
        d.deserialize_any(RadiusVisitor)
    }
}

/// Engine choice plus resolution parameters for one integral evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    pub engine: Engine,
    /// Gauss nodes per axis (box and Gaussian engines). With an automatic
    /// box radius this is the count on the initial box; each doubling of
    /// the radius doubles the panel count so node spacing is preserved.
    pub nodes_per_axis: usize,
    pub box_radius: BoxRadius,
    pub sample_count: u64,
    pub seed: u64,
    pub rel_tol: f64,
    /// Upper bound on integrand evaluations for one tensor rule.
    pub max_evaluations: u64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            engine: Engine::BoxGaussLegendre,
            nodes_per_axis: 64,
            box_radius: BoxRadius::Auto,
            sample_count: 1_000_000,
            seed: 0,
            rel_tol: 1e-9,
            max_evaluations: 1 << 26,
        }
    }
}

impl QuadratureSpec {
    pub fn new(engine: Engine) -> Self {
        QuadratureSpec {
            engine,
            ..Default::default()
        }
    }

    pub fn with_engine(&self, engine: Engine) -> Self {
        QuadratureSpec {
            engine,
            ..self.clone()
        }
    }

    pub fn nodes(mut self, n: usize) -> Self {
        self.nodes_per_axis = n;
        self
    }

    pub fn radius(mut self, r: BoxRadius) -> Self {
        self.box_radius = r;
        self
    }

    pub fn samples(mut self, n: u64) -> Self {
        self.sample_count = n;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn rel_tol(mut self, tol: f64) -> Self {
        self.rel_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_axis == 0 {
            return Err(Error::Input("nodes_per_axis must be at least 1".into()));
        }
        if self.sample_count == 0 {
            return Err(Error::Input("sample_count must be at least 1".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::Input(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if let BoxRadius::Fixed(r) = self.box_radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Input(format!(
                    "box_radius must be positive, got {r}"
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn require(&self, engine: Engine) -> Result<()> {
        self.validate()?;
        if self.engine != engine {
            return Err(Error::Usage(format!(
                "engine {} requested but spec selects {}",
                engine, self.engine
            )));
        }
        Ok(())
    }
}

/// Result of one integral evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralEstimate {
    pub value: f64,
    /// Sampling standard error; present exactly for Monte Carlo.
    pub std_error: Option<f64>,
    /// Absolute error estimate: the standard error for Monte Carlo, the
    /// difference to a coarser or smaller-box rule for deterministic engines.
    pub error_estimate: f64,
    pub engine: Engine,
    /// Integrand evaluations spent.
    pub effort: u64,
    pub box_radius_used: Option<f64>,
}
