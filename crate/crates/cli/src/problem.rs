use serde::Deserialize;
use sublevel::cubature::auto_enclosing_radius;
use sublevel::{
    BoxRadius, GeneralizedPolynomial, MultiPoly, QuadratureSpec, SimplexMonomial, SublevelProblem,
};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dim: Option<usize>,
    pub f: Option<MultiPoly>,
    pub g: Option<MultiPoly>,
    pub y: Option<f64>,
    pub y_grid: Option<Vec<f64>>,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub simplex: bool,
    pub alpha_terms: Option<Vec<SimplexMonomial>>,
    pub tau: Option<f64>,
}

pub enum Mode {
    /// Polynomial `f` over `{g ≤ y}`; `tau` is a trusted lower bound on `f`.
    Poly {
        problem: SublevelProblem,
        f: MultiPoly,
        g: MultiPoly,
        tau: Option<f64>,
    },
    /// Generalized polynomial over the dilated canonical simplex.
    Simplex(GeneralizedPolynomial),
}

pub struct Loaded {
    pub mode: Mode,
    pub dim: usize,
    pub ys: Vec<f64>,
    pub spec: QuadratureSpec,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
        serde_json::from_str(text).map_err(|e| bad(format!("problem file: {e}")))
    }

    /// Checks the whole document and builds the problem. Nothing numerical
    /// beyond construction happens here.
    pub fn load(self) -> Result<Loaded, CliError> {
        let ys = match (self.y, self.y_grid) {
            (Some(_), Some(_)) => return Err(bad("give either \"y\" or \"y_grid\", not both")),
            (Some(y), None) => vec![y],
            (None, Some(grid)) => grid,
            (None, None) => Vec::new(),
        };
        if let Some(y) = ys.iter().find(|y| !(**y > 0.0 && y.is_finite())) {
            return Err(bad(format!("levels must be positive and finite, got {y}")));
        }
        self.quadrature.validate()?;

        let (mode, dim) = if self.simplex {
            if self.f.is_some() || self.g.is_some() || self.tau.is_some() {
                return Err(bad(
                    "simplex problems take \"alpha_terms\" instead of f, g, tau",
                ));
            }
            let terms = self
                .alpha_terms
                .ok_or_else(|| bad("simplex problem needs \"alpha_terms\""))?;
            let poly = GeneralizedPolynomial::new(terms)?;
            let dim = poly.dim().ok_or_else(|| bad("\"alpha_terms\" is empty"))?;
            if let Some(d) = self.dim.filter(|&d| d != dim) {
                return Err(bad(format!(
                    "dim is {d} but the exponent vectors have length {dim}"
                )));
            }
            (Mode::Simplex(poly), dim)
        } else {
            if self.alpha_terms.is_some() {
                return Err(bad("\"alpha_terms\" requires \"simplex\": true"));
            }
            let g = self.g.ok_or_else(|| bad("problem needs \"g\""))?;
            let dim = g.dim();
            let f = self.f.unwrap_or_else(|| MultiPoly::constant(dim, 1.0));
            if f.dim() != dim {
                return Err(bad(format!("f has dimension {} but g has {dim}", f.dim())));
            }
            if let Some(d) = self.dim.filter(|&d| d != dim) {
                return Err(bad(format!("dim is {d} but g has dimension {dim}")));
            }
            if let Some(t) = self.tau.filter(|t| !t.is_finite()) {
                return Err(bad(format!("tau must be finite, got {t}")));
            }
            let problem = SublevelProblem::polynomial(f.clone(), g.clone())?;
            (
                Mode::Poly {
                    problem,
                    f,
                    g,
                    tau: self.tau,
                },
                dim,
            )
        };
        Ok(Loaded {
            mode,
            dim,
            ys,
            spec: self.quadrature,
        })
    }
}

impl Loaded {
    /// Half-width of a box holding `K_y`: the file's fixed radius, else the
    /// homogeneous bound, else `y` for the simplex.
    pub fn enclosing_radius(&self, y: f64) -> Result<f64, CliError> {
        if let BoxRadius::Fixed(r) = self.spec.box_radius {
            return Ok(r);
        }
        match &self.mode {
            Mode::Simplex(_) => Ok(y),
            Mode::Poly { g, .. } => Ok(auto_enclosing_radius(g, y)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_keys() {
        let text =
            r#"{"g": {"dim": 1, "terms": [{"coef": 1.0, "exps": [2]}]}, "y": 1, "colour": 3}"#;
        assert!(matches!(ProblemFile::parse(text), Err(CliError::Input(_))));
        let nested = r#"{"g": {"dim": 1, "terms": []}, "quadrature": {"nodes": 3}}"#;
        assert!(ProblemFile::parse(nested).is_err());
    }

    #[test]
    fn simplex_block() {
        let text =
            r#"{"simplex": true, "alpha_terms": [{"coef": 1.0, "alpha": [1.0, 0.0]}], "y": 1}"#;
        let loaded = ProblemFile::parse(text).unwrap().load().unwrap();
        assert_eq!(loaded.dim, 2);
        assert_eq!(loaded.ys, vec![1.0]);
        assert!(matches!(loaded.mode, Mode::Simplex(_)));
    }

    #[test]
    fn inconsistent_documents() {
        let both =
            r#"{"g": {"dim": 1, "terms": [{"coef": 1.0, "exps": [2]}]}, "y": 1, "y_grid": [1]}"#;
        assert!(ProblemFile::parse(both).unwrap().load().is_err());
        let dims = r#"{"dim": 2, "g": {"dim": 1, "terms": [{"coef": 1.0, "exps": [2]}]}}"#;
        assert!(ProblemFile::parse(dims).unwrap().load().is_err());
        let neg = r#"{"g": {"dim": 1, "terms": [{"coef": 1.0, "exps": [2]}]}, "y_grid": [1, -2]}"#;
        assert!(ProblemFile::parse(neg).unwrap().load().is_err());
        let alpha = r#"{"simplex": true, "alpha_terms": [{"coef": 1.0, "alpha": [-1.5]}]}"#;
        assert!(ProblemFile::parse(alpha).is_err());
    }
}
