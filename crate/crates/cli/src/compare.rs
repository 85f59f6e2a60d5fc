//! Oracle comparison: both numeric covariance routes against each other, and
//! against the exact closed form at resonant EIT points.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use eit_memory::{build_model, covariance_by_integration, covariance_by_lyapunov, Dimensionless, QuadratureConfig};

use crate::config::{Mode, Scenario};
use crate::figures::R_HALF;

pub const NUMERIC_TOLERANCE: f64 = 1e-8;
pub const CLOSED_FORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub name: String,
    pub point: Dimensionless,
    pub eta_integration: Option<f64>,
    pub eta_lyapunov_like: Option<f64>,
    pub eta_closed: Option<f64>,
    pub min_variance_integration: Option<f64>,
    pub min_variance_lyapunov: Option<f64>,
    /// Largest of the route-to-route spin-covariance deviation (relative to
    /// its largest entry) and the numeric-to-closed-form deviations.
    pub max_rel_dev: f64,
    pub pass: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub version: &'static str,
    pub seed: u64,
    pub numeric_tolerance: f64,
    pub closed_form_tolerance: f64,
    pub quadrature_rel_tol: f64,
    pub rows: Vec<ComparisonRow>,
    pub all_pass: bool,
}

pub fn builtin_scenarios() -> Vec<Scenario> {
    vec![
        Scenario::new("fig3_optimum", Dimensionless::new(100.0, 0.5, 1e-3, 15.0).with_squeezing(R_HALF), Mode::Eit),
        Scenario::new("no_pump_vacuum", Dimensionless::new(100.0, 0.5, 1e-3, 0.0), Mode::Eit),
    ]
}

/// Stable random points: σ > 0 keeps every drift eigenvalue in the left half-plane.
pub fn random_scenarios(count: usize, seed: u64) -> Vec<Scenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let log = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| 10f64.powf(rng.random_range(lo..hi));
            let mut d = Dimensionless::new(
                rng.random_range(0.0..300.0),
                log(&mut rng, -1.0, 1.0),
                log(&mut rng, -4.0, -1.0),
                log(&mut rng, -2.0, 2.0),
            )
            .with_detunings(
                rng.random_range(-20.0..20.0),
                rng.random_range(-20.0..20.0),
                rng.random_range(-0.5..0.5),
            )
            .with_squeezing(rng.random_range(0.0..1.5));
            d.squeezed_quadrature_angle = rng.random_range(0.0..PI);
            Scenario::new(&format!("random_{i:03}"), d, Mode::General)
        })
        .collect()
}

fn compare_point(s: &Scenario, cfg: &QuadratureConfig) -> ComparisonRow {
    let mut row = ComparisonRow {
        name: s.name.clone(),
        point: s.params,
        eta_integration: None,
        eta_lyapunov_like: None,
        eta_closed: None,
        min_variance_integration: None,
        min_variance_lyapunov: None,
        max_rel_dev: f64::NAN,
        pass: false,
        error: None,
    };
    let reports = s
        .params
        .to_params()
        .and_then(|p| build_model(&p))
        .and_then(|m| Ok((covariance_by_integration(&m, cfg)?, covariance_by_lyapunov(&m)?)));
    let (integ, lyap) = match reports {
        Ok(r) => r,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.eta_integration = integ.efficiency;
    row.eta_lyapunov_like = lyap.efficiency;
    row.min_variance_integration = Some(integ.min_variance);
    row.min_variance_lyapunov = Some(lyap.min_variance);

    let numeric = (integ.spin_cov - lyap.spin_cov).abs().max() / lyap.spin_cov.abs().max();
    let mut pass = numeric <= NUMERIC_TOLERANCE;
    let mut worst = numeric;
    let closed = if s.mode == Mode::Eit { s.closed_form(&s.params) } else { None };
    if let Some(closed) = closed {
        for eta in [integ.efficiency, lyap.efficiency].into_iter().flatten() {
            let dev = (eta / closed - 1.0).abs();
            worst = worst.max(dev);
            pass &= dev <= CLOSED_FORM_TOLERANCE;
        }
    }
    // without pumping the spin only sees its own bath: coherent-state variance
    if s.params.gamma_e == 0.0 {
        for v in [integ.min_variance, lyap.min_variance] {
            let dev = (v - 1.0).abs();
            worst = worst.max(dev);
            pass &= dev <= CLOSED_FORM_TOLERANCE;
        }
    }
    row.eta_closed = closed;
    row.max_rel_dev = worst;
    row.pass = pass;
    row
}

pub fn run_compare(scenarios: &[Scenario], seed: u64, cfg: &QuadratureConfig) -> ComparisonReport {
    let rows: Vec<ComparisonRow> = scenarios.par_iter().map(|s| compare_point(s, cfg)).collect();
    let all_pass = rows.iter().all(|r| r.pass);
    ComparisonReport {
        version: env!("CARGO_PKG_VERSION"),
        seed,
        numeric_tolerance: NUMERIC_TOLERANCE,
        closed_form_tolerance: CLOSED_FORM_TOLERANCE,
        quadrature_rel_tol: cfg.rel_tol,
        rows,
        all_pass,
    }
}
