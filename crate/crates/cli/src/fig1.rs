//! The two planar sets `x⁴ + y⁴ − 1.925x²y² ≤ 1` and
//! `x⁶ + y⁶ − 1.925x³y³ ≤ 1`, which pinch toward the diagonals: their
//! indicator is hard for tensor cubature, while the smooth dual integrand
//! is not.

use std::time::Instant;

use clap::ValueEnum;
use sublevel::cubature::{auto_enclosing_radius, integrate_box, monte_carlo_sublevel};
use sublevel::duality::v_dual_homogeneous;
use sublevel::{BoxRadius, Engine, MultiPoly, QuadratureSpec, SublevelProblem};

use crate::table::{Cell, Table};
use crate::CliError;

const CROSS: f64 = -1.925;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Quartic,
    Sextic,
}

impl Variant {
    fn name(self) -> &'static str {
        match self {
            Variant::Quartic => "quartic",
            Variant::Sextic => "sextic",
        }
    }

    pub fn constraint(self) -> MultiPoly {
        let (k, h) = match self {
            Variant::Quartic => (4, 2),
            Variant::Sextic => (6, 3),
        };
        MultiPoly::from_terms(
            2,
            [(vec![k, 0], 1.0), (vec![0, k], 1.0), (vec![h, h], CROSS)],
        )
        .expect("planar terms")
    }
}

fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    eprintln!("{label}: {:.3} s", start.elapsed().as_secs_f64());
    out
}

/// `v(1)` for `f = 1` three ways. Wall times go to stderr so stdout stays
/// reproducible.
pub fn bench(variant: Variant, spec: &QuadratureSpec, nodes: usize) -> Result<Table, CliError> {
    let g = variant.constraint();
    let problem = SublevelProblem::polynomial(MultiPoly::constant(2, 1.0), g.clone())?;
    let dual = timed("dual cubature", || {
        v_dual_homogeneous(&problem, 1.0, &spec.with_engine(Engine::BoxGaussLegendre))
    })?;

    let r = auto_enclosing_radius(&g, 1.0)?;
    let ge = |x: &[f64]| g.evaluate(x).expect("planar point");
    let mc = timed("monte carlo", || {
        monte_carlo_sublevel(
            |_| 1.0,
            ge,
            2,
            1.0,
            r,
            &spec.with_engine(Engine::MonteCarlo),
        )
    })?;
    let box_spec = spec
        .with_engine(Engine::BoxGaussLegendre)
        .radius(BoxRadius::Fixed(r))
        .nodes(nodes);
    let boxed = timed("box indicator", || {
        integrate_box(|x| if ge(x) <= 1.0 { 1.0 } else { 0.0 }, 2, &box_spec)
    })?;

    let mut t = Table::new(&[
        "variant",
        "lambda_1",
        "v_dual",
        "dual_error_estimate",
        "v_direct_mc",
        "mc_std_error",
        "v_direct_boxindicator",
        "rel_diff_dual_vs_mc",
        "rel_diff_boxindicator_vs_dual",
        "samples",
        "nodes",
        "seed",
    ]);
    t.push(vec![
        variant.name().into(),
        dual.lambda_y.into(),
        dual.v_value.into(),
        dual.error_estimate.into(),
        mc.value.into(),
        mc.std_error.into(),
        boxed.value.into(),
        ((dual.v_value - mc.value) / mc.value).abs().into(),
        ((boxed.value - dual.v_value) / dual.v_value).abs().into(),
        spec.sample_count.into(),
        Cell::Int(nodes as u64),
        spec.seed.into(),
    ]);
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraints_are_positive_off_origin() {
        // 2x²y² ≥ 1.925x²y², so g(1, 1) = 2 - 1.925
        let q = Variant::Quartic.constraint();
        assert!((q.evaluate(&[1.0, 1.0]).unwrap() - 0.075).abs() < 1e-15);
        let s = Variant::Sextic.constraint();
        assert!((s.evaluate(&[1.0, 1.0]).unwrap() - 0.075).abs() < 1e-15);
        assert_eq!(q.homogeneity_degree(), Some(4));
        assert_eq!(s.homogeneity_degree(), Some(6));
    }
}
