use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fmt17;

/// How a certified value of `v(y)` was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedFormHomogeneous,
    DualCubature,
    DualGaussian,
    RootFound,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ClosedFormHomogeneous => "closed-form-homogeneous",
            Method::DualCubature => "dual-cubature",
            Method::DualGaussian => "dual-gaussian",
            Method::RootFound => "root-found",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A value `v(y)` together with the dual variable that represents it as a
/// whole-space exponentially weighted integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualCertificate {
    pub y: f64,
    pub lambda_y: f64,
    pub v_value: f64,
    pub method: Method,
    pub error_estimate: f64,
}

impl DualCertificate {
    pub const CSV_HEADER: &'static str = "y,lambda_y,v_value,method,error_estimate";

    /// One CSV row, floats with 17 significant digits.
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            fmt17(self.y),
            fmt17(self.lambda_y),
            fmt17(self.v_value),
            self.method,
            fmt17(self.error_estimate)
        )
    }
}
