//! Scenario files: one TOML table per scenario, every rate in units of γ.
//!
//! ```toml
//! [fig3_optimum]
//! C = 100.0
//! rho = 0.5
//! sigma = 0.001
//! gamma_E = 15.0
//! r = 0.3466
//! mode = "EIT"
//!
//! [fig3_optimum.sweep]
//! axis = "gamma_E"
//! start = 0.1
//! stop = 100.0
//! count = 40
//! spacing = "log"
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use eit_memory::analytic::{eta_delta_lf, eta_eit_exact, eta_raman_lf};
use eit_memory::spectra::SweepAxis;
use eit_memory::Dimensionless;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
pub enum Mode {
    #[default]
    #[serde(rename = "EIT")]
    Eit,
    Raman,
    #[serde(rename = "general")]
    General,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Eit => "EIT",
            Mode::Raman => "Raman",
            Mode::General => "general",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default = "default_spacing")]
    pub spacing: Spacing,
}

fn default_spacing() -> Spacing {
    Spacing::Linear
}

impl SweepSpec {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.count < 2 {
            bail!("sweep count must be >= 2, got {}", self.count);
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            bail!("sweep endpoints must be finite");
        }
        Ok(match self.spacing {
            Spacing::Linear => linspace(self.start, self.stop, self.count),
            Spacing::Log => {
                if self.start <= 0.0 || self.stop <= 0.0 {
                    bail!("log spacing needs positive endpoints, got {} and {}", self.start, self.stop);
                }
                logspace(self.start, self.stop, self.count)
            }
        })
    }
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    let step = (stop - start) / (count - 1) as f64;
    (0..count).map(|i| if i + 1 == count { stop } else { start + step * i as f64 }).collect()
}

pub fn logspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    let (lo, hi) = (start.log10(), stop.log10());
    let step = (hi - lo) / (count - 1) as f64;
    (0..count)
        .map(|i| match i {
            0 => start,
            _ if i + 1 == count => stop,
            _ => 10f64.powf(lo + step * i as f64),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(rename = "C")]
    cooperativity: f64,
    rho: f64,
    sigma: f64,
    #[serde(rename = "gamma_E")]
    gamma_e: f64,
    #[serde(default)]
    delta_bar: f64,
    #[serde(default)]
    delta_c_bar: f64,
    #[serde(default)]
    delta_2ph_bar: f64,
    #[serde(default)]
    r: f64,
    #[serde(default)]
    squeezed_quadrature_angle: f64,
    n_atoms: Option<f64>,
    #[serde(default)]
    mode: Mode,
    sweep: Option<SweepSpec>,
    #[serde(default)]
    track_optimal_conditions: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub params: Dimensionless,
    pub mode: Mode,
    pub sweep: Option<SweepSpec>,
    pub track_optimal_conditions: bool,
}

impl Scenario {
    pub fn new(name: &str, params: Dimensionless, mode: Mode) -> Self {
        Self { name: name.to_string(), params, mode, sweep: None, track_optimal_conditions: false }
    }

    /// Closed-form efficiency for the scenario's mode, if one applies.
    pub fn closed_form(&self, p: &Dimensionless) -> Option<f64> {
        match self.mode {
            Mode::Eit => is_resonant_eit(p).then(|| eta_eit_exact(p.cooperativity, p.gamma_e, p.sigma, p.rho)),
            Mode::Raman if p.delta_bar != 0.0 => {
                let gamma_r = p.gamma_e / (p.delta_bar * p.delta_bar);
                Some(eta_raman_lf(p.cooperativity, gamma_r, p.sigma))
            }
            Mode::Raman => None,
            Mode::General => Some(eta_delta_lf(p.cooperativity, p.gamma_e, p.sigma, p.delta_bar)),
        }
    }
}

/// The exact resonant EIT efficiency applies only at full resonance with the
/// squeezed input quadrature on the amplitude axis.
pub fn is_resonant_eit(p: &Dimensionless) -> bool {
    p.delta_bar == 0.0
        && p.delta_c_bar == 0.0
        && p.delta_2ph_bar == 0.0
        && p.squeezed_quadrature_angle == 0.0
        && p.r > 0.0
}

pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>> {
    let raw: BTreeMap<String, RawScenario> = toml::from_str(text).context("parsing scenario file")?;
    let mut out = Vec::with_capacity(raw.len());
    for (name, s) in raw {
        let mut params = Dimensionless::new(s.cooperativity, s.rho, s.sigma, s.gamma_e)
            .with_detunings(s.delta_bar, s.delta_c_bar, s.delta_2ph_bar)
            .with_squeezing(s.r);
        params.squeezed_quadrature_angle = s.squeezed_quadrature_angle;
        if let Some(n) = s.n_atoms {
            params.n_atoms = n;
        }
        params.to_params().with_context(|| format!("scenario `{name}`"))?;
        if let Some(sweep) = &s.sweep {
            sweep.values().with_context(|| format!("scenario `{name}`"))?;
        }
        out.push(Scenario {
            name,
            params,
            mode: s.mode,
            sweep: s.sweep,
            track_optimal_conditions: s.track_optimal_conditions,
        });
    }
    Ok(out)
}

pub fn load_scenarios(path: &Path) -> Result<Vec<Scenario>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_scenarios(&text)
}
