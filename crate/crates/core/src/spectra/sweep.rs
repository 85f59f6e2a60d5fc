use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{covariance_by_integration, covariance_by_lyapunov, CovarianceReport};
use crate::analytic::optimal_conditions;
use crate::error::{Error, Result};
use crate::langevin::build_model;
use crate::params::Dimensionless;
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    DeltaBar,
    #[serde(alias = "gamma_E")]
    GammaE,
    #[serde(rename = "delta_2ph")]
    Delta2ph,
    DeltaC,
    R,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::DeltaBar => "delta_bar",
            SweepAxis::GammaE => "gamma_E",
            SweepAxis::Delta2ph => "delta_2ph",
            SweepAxis::DeltaC => "delta_c",
            SweepAxis::R => "r",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta_bar" => Ok(SweepAxis::DeltaBar),
            "gamma_E" | "gamma_e" => Ok(SweepAxis::GammaE),
            "delta_2ph" => Ok(SweepAxis::Delta2ph),
            "delta_c" => Ok(SweepAxis::DeltaC),
            "r" => Ok(SweepAxis::R),
            other => Err(Error::UnknownAxis(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Lyapunov,
    Integration(QuadratureConfig),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub method: Method,
    /// Place Δ_c and δ at the optimum for the point's Δ̄ and γ_E. Values on
    /// the `delta_2ph` and `delta_c` axes are then offsets from that optimum.
    pub track_optimal: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { method: Method::Lyapunov, track_optimal: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub point: Dimensionless,
    /// Unstable or failed points are kept in place with their error.
    pub outcome: Result<CovarianceReport>,
}

/// The parameter point a sweep visits at `value`.
pub fn point_for(base: &Dimensionless, axis: SweepAxis, value: f64, track_optimal: bool) -> Dimensionless {
    let mut p = *base;
    match axis {
        SweepAxis::DeltaBar => p.delta_bar = value,
        SweepAxis::GammaE => p.gamma_e = value,
        SweepAxis::R => p.r = value,
        SweepAxis::Delta2ph if !track_optimal => p.delta_2ph_bar = value,
        SweepAxis::DeltaC if !track_optimal => p.delta_c_bar = value,
        _ => {}
    }
    if track_optimal {
        let oc = optimal_conditions(p.cooperativity, 1.0 / p.rho, 1.0, p.gamma_e, p.delta_bar);
        p.delta_c_bar = oc.delta_c;
        p.delta_2ph_bar = oc.delta_2ph;
        match axis {
            SweepAxis::Delta2ph => p.delta_2ph_bar += value,
            SweepAxis::DeltaC => p.delta_c_bar += value,
            _ => {}
        }
    }
    p
}

fn evaluate(point: &Dimensionless, method: Method) -> Result<CovarianceReport> {
    let model = build_model(&point.to_params()?)?;
    match method {
        Method::Lyapunov => covariance_by_lyapunov(&model),
        Method::Integration(cfg) => covariance_by_integration(&model, &cfg),
    }
}

/// One row per value, in the order given, evaluated in parallel.
pub fn efficiency_sweep(base: &Dimensionless, axis: SweepAxis, values: &[f64], options: SweepOptions) -> Vec<SweepRow> {
    values
        .par_iter()
        .map(|&value| {
            let point = point_for(base, axis, value, options.track_optimal);
            SweepRow { value, point, outcome: evaluate(&point, options.method) }
        })
        .collect()
}
