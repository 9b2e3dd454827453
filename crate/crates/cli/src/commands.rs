use serde_json::Value;
use sublevel::cubature::{integrate_box, monte_carlo_sublevel};
use sublevel::duality::{
    find_lambda_for_target, laplace_by_y_quadrature, laplace_of_v, v_dual_homogeneous,
    v_homogeneous_closed_form, v_polynomial, v_with_lower_bound,
};
use sublevel::simplex::{
    generalized_polynomial_lambda_y, generalized_polynomial_laplace, generalized_polynomial_v,
};
use sublevel::{
    mean_value_point, BoxRadius, DualCertificate, Engine, GeneralizedPolynomial, IntegralEstimate,
    Method,
};

use crate::problem::{Loaded, Mode};
use crate::table::{Cell, Table};
use crate::CliError;

pub const SWEEP_HEADER: [&str; 8] = [
    "y",
    "lambda_y",
    "v_dual",
    "v_direct_mc",
    "v_direct_boxindicator",
    "rel_diff_dual_vs_mc",
    "method",
    "seed",
];

struct DualValue {
    value: f64,
    /// Present when one dual variable represents the whole value.
    lambda_y: Option<f64>,
    error_estimate: f64,
    method: String,
    certificates: Vec<DualCertificate>,
}

fn certificate_json(certs: &[DualCertificate]) -> Value {
    serde_json::to_value(certs).expect("plain values")
}

fn from_certificates(value: f64, certificates: Vec<DualCertificate>) -> DualValue {
    let lambda_y = match certificates.as_slice() {
        [c] => Some(c.lambda_y),
        _ => None,
    };
    let mut methods: Vec<&str> = certificates.iter().map(|c| c.method.tag()).collect();
    methods.dedup();
    DualValue {
        value,
        lambda_y,
        error_estimate: certificates.iter().map(|c| c.error_estimate).sum(),
        method: if methods.is_empty() {
            "exact-zero".into()
        } else {
            methods.join("+")
        },
        certificates,
    }
}

fn simplex_dual(p: &GeneralizedPolynomial, y: f64) -> Result<DualValue, CliError> {
    let value = generalized_polynomial_v(p, y)?;
    // λ_y only exists as a single number when φ is monotone
    let lambda_y = generalized_polynomial_lambda_y(p, y).ok();
    let cert = DualCertificate {
        y,
        lambda_y: lambda_y.unwrap_or(f64::NAN),
        v_value: value,
        method: Method::ClosedFormHomogeneous,
        error_estimate: 0.0,
    };
    Ok(DualValue {
        value,
        lambda_y,
        error_estimate: 0.0,
        method: Method::ClosedFormHomogeneous.tag().into(),
        certificates: vec![cert],
    })
}

/// The dual path, when `g` admits one.
fn dual_value(loaded: &Loaded, y: f64) -> Result<Option<DualValue>, CliError> {
    let spec = &loaded.spec;
    match &loaded.mode {
        Mode::Simplex(p) => simplex_dual(p, y).map(Some),
        Mode::Poly { problem, .. } if problem.g_degree().is_none() => Ok(None),
        Mode::Poly {
            problem,
            tau: Some(tau),
            ..
        } => {
            let split = v_with_lower_bound(problem, *tau, y, spec)?;
            let mut certs = vec![split.volume];
            certs.extend(split.shifted.certificates);
            let mut out = from_certificates(split.value, certs);
            // the split is a sum of several dual integrals
            out.lambda_y = None;
            Ok(Some(out))
        }
        Mode::Poly { problem, .. } if problem.f_degree().is_some() => {
            let c = v_dual_homogeneous(problem, y, spec)?;
            Ok(Some(from_certificates(c.v_value, vec![c])))
        }
        Mode::Poly { problem, .. } => {
            let pv = v_polynomial(problem, y, spec)?;
            Ok(Some(from_certificates(pv.value, pv.certificates)))
        }
    }
}

fn simplex_constraint(x: &[f64]) -> f64 {
    if x.iter().any(|&t| t < 0.0) {
        f64::INFINITY
    } else {
        x.iter().sum()
    }
}

struct Direct {
    mc: IntegralEstimate,
    box_indicator: IntegralEstimate,
}

/// Hit-or-miss Monte Carlo and box cubature of `f·1[g ≤ y]` over the
/// enclosing box.
fn direct_values(loaded: &Loaded, y: f64) -> Result<Direct, CliError> {
    let r = loaded.enclosing_radius(y)?;
    let mc_spec = loaded.spec.with_engine(Engine::MonteCarlo);
    let box_spec = loaded
        .spec
        .with_engine(Engine::BoxGaussLegendre)
        .radius(BoxRadius::Fixed(r));
    let dim = loaded.dim;
    Ok(match &loaded.mode {
        Mode::Poly { f, g, .. } => {
            let fe = |x: &[f64]| f.evaluate(x).expect("dimension checked");
            let ge = |x: &[f64]| g.evaluate(x).expect("dimension checked");
            let mc = monte_carlo_sublevel(fe, ge, dim, y, r, &mc_spec)?;
            let box_indicator =
                integrate_box(|x| if ge(x) <= y { fe(x) } else { 0.0 }, dim, &box_spec)?;
            Direct { mc, box_indicator }
        }
        Mode::Simplex(p) => {
            let mc = monte_carlo_sublevel(|x| p.eval(x), simplex_constraint, dim, y, r, &mc_spec)?;
            let box_indicator = integrate_box(
                |x| {
                    if simplex_constraint(x) <= y {
                        p.eval(x)
                    } else {
                        0.0
                    }
                },
                dim,
                &box_spec,
            )?;
            Direct { mc, box_indicator }
        }
    })
}

fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

pub fn integrate(loaded: &Loaded) -> Result<Table, CliError> {
    let mut t = Table::new(&[
        "y",
        "lambda_y",
        "v_dual",
        "dual_error_estimate",
        "v_direct_mc",
        "mc_std_error",
        "v_direct_boxindicator",
        "boxindicator_error_estimate",
        "rel_diff_dual_vs_mc",
        "method",
        "seed",
    ])
    .json_column("certificates");
    if loaded.ys.is_empty() {
        return Err(CliError::Input(
            "integrate needs \"y\" or a nonempty \"y_grid\"".into(),
        ));
    }
    for &y in &loaded.ys {
        let dual = dual_value(loaded, y)?;
        let direct = direct_values(loaded, y)?;
        let bx = &direct.box_indicator;
        let (lambda_y, v_dual, err, method, certs) = match dual {
            Some(d) => (
                d.lambda_y.into(),
                Cell::Num(d.value),
                Cell::Num(d.error_estimate),
                d.method,
                certificate_json(&d.certificates),
            ),
            None => (
                Cell::Missing,
                Cell::Missing,
                Cell::Missing,
                "direct-only".into(),
                Value::Array(vec![]),
            ),
        };
        let rel = match &v_dual {
            Cell::Num(v) => Cell::Num(rel_diff(*v, direct.mc.value)),
            _ => Cell::Missing,
        };
        t.push(vec![
            y.into(),
            lambda_y,
            v_dual,
            err,
            direct.mc.value.into(),
            direct.mc.std_error.into(),
            bx.value.into(),
            bx.error_estimate.into(),
            rel,
            Cell::Text(method),
            loaded.spec.seed.into(),
            Cell::Json(certs),
        ]);
    }
    Ok(t)
}

pub fn sweep(loaded: &Loaded) -> Result<Table, CliError> {
    if let Mode::Poly { problem, .. } = &loaded.mode {
        if problem.f_degree().is_none() || problem.g_degree().is_none() {
            return Err(CliError::Input(
                "sweep needs positively homogeneous f and g, or a simplex problem".into(),
            ));
        }
    }
    let mut t = Table::new(&SWEEP_HEADER);
    for &y in &loaded.ys {
        let dual = dual_value(loaded, y)?.expect("homogeneous g");
        let direct = direct_values(loaded, y)?;
        t.push(vec![
            y.into(),
            dual.lambda_y.into(),
            dual.value.into(),
            direct.mc.value.into(),
            direct.box_indicator.value.into(),
            rel_diff(dual.value, direct.mc.value).into(),
            Cell::Text(dual.method),
            loaded.spec.seed.into(),
        ]);
    }
    Ok(t)
}

pub fn laplace_check(loaded: &Loaded, lambdas: &[f64]) -> Result<Table, CliError> {
    if let Some(l) = lambdas.iter().find(|l| !(**l > 0.0 && l.is_finite())) {
        return Err(CliError::Input(format!("lambda must be positive, got {l}")));
    }
    let mut t = Table::new(&["lambda", "lhs", "rhs", "rel_diff"]).json_column("tail_bound");
    let spec = &loaded.spec;
    match &loaded.mode {
        Mode::Poly {
            problem, tau: None, ..
        } => {
            let p = problem.value_exponent().map_err(|_| {
                CliError::Input(
                    "laplace-check needs a closed-form v: homogeneous f and g, or a simplex".into(),
                )
            })?;
            // v(y) = y^p ∫f e^{-g} / Γ(1+p), the base integral computed once
            let base = sublevel::duality::dual_integral(problem, 1.0, spec)?.value;
            for &lambda in lambdas {
                let side = laplace_by_y_quadrature(
                    |y| v_homogeneous_closed_form(problem, base, y).unwrap_or(f64::NAN),
                    lambda,
                    p,
                )?;
                let rhs = laplace_of_v(problem, lambda, spec)?;
                t.push(vec![
                    lambda.into(),
                    side.value.into(),
                    rhs.into(),
                    rel_diff(side.value, rhs).into(),
                    side.tail_bound.into(),
                ]);
            }
        }
        Mode::Poly { .. } => {
            return Err(CliError::Input(
                "laplace-check does not take a lower bound tau".into(),
            ))
        }
        Mode::Simplex(poly) => {
            let growth = poly
                .terms()
                .iter()
                .map(|m| m.value_exponent())
                .fold(0.0, f64::max);
            for &lambda in lambdas {
                let side = laplace_by_y_quadrature(
                    |y| generalized_polynomial_v(poly, y).unwrap_or(f64::NAN),
                    lambda,
                    growth,
                )?;
                let rhs = generalized_polynomial_laplace(poly, lambda)?;
                t.push(vec![
                    lambda.into(),
                    side.value.into(),
                    rhs.into(),
                    rel_diff(side.value, rhs).into(),
                    side.tail_bound.into(),
                ]);
            }
        }
    }
    Ok(t)
}

pub fn mvt(loaded: &Loaded) -> Result<Table, CliError> {
    let Mode::Poly { problem, .. } = &loaded.mode else {
        return Err(CliError::Input(
            "mvt works on polynomial problems only".into(),
        ));
    };
    if loaded.ys.is_empty() {
        return Err(CliError::Input(
            "mvt needs \"y\" or a nonempty \"y_grid\"".into(),
        ));
    }
    let coords: Vec<String> = (1..=loaded.dim).map(|i| format!("x{i}")).collect();
    let mut columns = vec!["y"];
    columns.extend(coords.iter().map(String::as_str));
    columns.extend(["f_at_point", "target_mean", "residual", "attempts", "seed"]);
    let mut t = Table::new(&columns);
    for &y in &loaded.ys {
        let out = mean_value_point(problem, y, &loaded.spec)?;
        let mut row: Vec<Cell> = vec![y.into()];
        row.extend(out.point.iter().map(|&x| Cell::Num(x)));
        row.extend([
            out.f_at_point.into(),
            out.target_mean.into(),
            out.residual.into(),
            (out.attempts as u64).into(),
            loaded.spec.seed.into(),
        ]);
        t.push(row);
    }
    Ok(t)
}

pub fn find_lambda(loaded: &Loaded, target: f64, bracket: (f64, f64)) -> Result<Table, CliError> {
    let Mode::Poly { problem, .. } = &loaded.mode else {
        return Err(CliError::Input(
            "find-lambda works on polynomial problems; simplex values have closed-form duals"
                .into(),
        ));
    };
    let found = find_lambda_for_target(problem, target, bracket, &loaded.spec)?;
    let mut t = Table::new(&[
        "target",
        "lambda",
        "value",
        "residual",
        "error_estimate",
        "iterations",
    ]);
    t.push(vec![
        target.into(),
        found.lambda.into(),
        found.value.into(),
        found.residual.into(),
        found.error_estimate.into(),
        (found.iterations as u64).into(),
    ]);
    Ok(t)
}
