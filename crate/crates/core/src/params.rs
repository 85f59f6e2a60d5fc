//! Physical and dimensionless parameters of the atom–cavity–field system.
//!
//! Every rate is measured in the same unit. The dimensionless entry point
//! [`from_dimensionless`] fixes γ = 1 and τ = 1, so rates coming out of it are
//! in units of the optical-dipole decay rate.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Atom number used by [`from_dimensionless`] when none is given.
///
/// Normalized results do not depend on it.
pub const DEFAULT_ATOM_NUMBER: f64 = 1.0e6;

/// Rates, couplings and detunings of the Λ-atoms + cavity + squeezed vacuum system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Optical-dipole decay rate γ.
    pub gamma: f64,
    /// Ground-state coherence decay rate γ0.
    pub gamma0: f64,
    /// Intracavity field decay rate κ.
    pub kappa: f64,
    /// Cavity round-trip time τ.
    pub tau: f64,
    /// Atom–field coupling constant g of the squeezed mode.
    pub g: f64,
    /// Atom number N, treated as a continuous parameter.
    pub n_atoms: f64,
    /// Pump Rabi pulsation Ω (real).
    pub omega: f64,
    /// One-photon detuning Δ of the squeezed mode.
    pub delta_1: f64,
    /// Cavity detuning Δ_c of the squeezed mode.
    pub delta_c: f64,
    /// Two-photon detuning δ.
    pub delta_2ph: f64,
    /// Squeezing parameter r: the squeezed quadrature has spectrum e^{-2r}.
    pub r_squeeze: f64,
    /// Angle of the squeezed input quadrature, 0 = amplitude quadrature.
    pub squeezed_quadrature_angle: f64,
}

/// Non-fatal findings of [`SystemParams::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ParamWarning {
    /// γ0 is not small compared to γ.
    GroundDecayNotSmall { gamma0: f64, gamma: f64 },
}

fn positive(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter { field, value, reason: "must be finite" });
    }
    if value <= 0.0 {
        return Err(Error::InvalidParameter { field, value, reason: "must be > 0" });
    }
    Ok(())
}

fn non_negative(field: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::InvalidParameter { field, value, reason: "must be finite" });
    }
    if value < 0.0 {
        return Err(Error::InvalidParameter { field, value, reason: "must be >= 0" });
    }
    Ok(())
}

fn finite(field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { field, value, reason: "must be finite" })
    }
}

impl SystemParams {
    /// Checks the invariants; returns warnings for soft violations.
    pub fn validate(&self) -> Result<Vec<ParamWarning>> {
        positive("gamma", self.gamma)?;
        positive("kappa", self.kappa)?;
        positive("tau", self.tau)?;
        positive("n_atoms", self.n_atoms)?;
        non_negative("g", self.g)?;
        non_negative("omega", self.omega)?;
        non_negative("gamma0", self.gamma0)?;
        non_negative("r_squeeze", self.r_squeeze)?;
        finite("delta_1", self.delta_1)?;
        finite("delta_c", self.delta_c)?;
        finite("delta_2ph", self.delta_2ph)?;
        finite("squeezed_quadrature_angle", self.squeezed_quadrature_angle)?;

        let mut warnings = Vec::new();
        if self.gamma0 >= self.gamma {
            warnings.push(ParamWarning::GroundDecayNotSmall {
                gamma0: self.gamma0,
                gamma: self.gamma,
            });
        }
        Ok(warnings)
    }

    /// C = g²N / (2κγτ).
    pub fn cooperativity(&self) -> f64 {
        self.g * self.g * self.n_atoms / (2.0 * self.kappa * self.gamma * self.tau)
    }

    /// Mirror transmission T = 2κτ.
    pub fn mirror_transmission(&self) -> f64 {
        2.0 * self.kappa * self.tau
    }

    /// d = (κ + iΔ_c)(γ + iΔ) + g²N/τ.
    pub fn denominator(&self) -> Complex<f64> {
        Complex::new(self.kappa, self.delta_c) * Complex::new(self.gamma, self.delta_1)
            + Complex::new(self.g * self.g * self.n_atoms / self.tau, 0.0)
    }

    pub fn to_dimensionless(&self) -> Dimensionless {
        Dimensionless {
            cooperativity: self.cooperativity(),
            rho: self.gamma / self.kappa,
            sigma: self.gamma0 / self.gamma,
            gamma_e: self.omega * self.omega / (self.gamma * self.gamma),
            delta_bar: self.delta_1 / self.gamma,
            delta_c_bar: self.delta_c / self.gamma,
            delta_2ph_bar: self.delta_2ph / self.gamma,
            r: self.r_squeeze,
            squeezed_quadrature_angle: self.squeezed_quadrature_angle,
            n_atoms: self.n_atoms,
        }
    }
}

/// Dimensionless groups computed from [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedParams {
    pub cooperativity: f64,
    pub mirror_t: f64,
    /// Γ_E = Ω²/γ.
    pub gamma_e_rate: f64,
    /// Γ_R = γΩ²/Δ², undefined at Δ = 0.
    pub gamma_r_rate: Option<f64>,
    /// γ0 + Γ_E/(1+2C).
    pub gamma_tilde0_eit: f64,
    /// γ0 + (1+2C)Γ_R, undefined at Δ = 0.
    pub gamma_tilde0_raman: Option<f64>,
    pub rho: f64,
    pub sigma: f64,
    pub gamma_e_dimless: f64,
    pub delta_bar: f64,
    /// ω_c = √(2C/ρ)·γ.
    pub coupling_freq: f64,
}

pub fn derive(params: &SystemParams) -> Result<DerivedParams> {
    params.validate()?;
    let p = params;
    let cooperativity = p.cooperativity();
    let rho = p.gamma / p.kappa;
    let gamma_e_rate = p.omega * p.omega / p.gamma;
    let gamma_r_rate = (p.delta_1 != 0.0)
        .then(|| p.gamma * p.omega * p.omega / (p.delta_1 * p.delta_1));
    let one_plus_2c = 1.0 + 2.0 * cooperativity;

    Ok(DerivedParams {
        cooperativity,
        mirror_t: p.mirror_transmission(),
        gamma_e_rate,
        gamma_r_rate,
        gamma_tilde0_eit: p.gamma0 + gamma_e_rate / one_plus_2c,
        gamma_tilde0_raman: gamma_r_rate.map(|rate| p.gamma0 + one_plus_2c * rate),
        rho,
        sigma: p.gamma0 / p.gamma,
        gamma_e_dimless: gamma_e_rate / p.gamma,
        delta_bar: p.delta_1 / p.gamma,
        coupling_freq: (2.0 * cooperativity / rho).sqrt() * p.gamma,
    })
}

/// The dimensionless parameterization (C, ρ, σ, γ_E, Δ̄, Δ̄_c, δ̄, r) plus the
/// squeezing angle and the atom number used to realize it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dimensionless {
    pub cooperativity: f64,
    pub rho: f64,
    pub sigma: f64,
    pub gamma_e: f64,
    pub delta_bar: f64,
    pub delta_c_bar: f64,
    pub delta_2ph_bar: f64,
    pub r: f64,
    pub squeezed_quadrature_angle: f64,
    pub n_atoms: f64,
}

impl Dimensionless {
    /// Resonant (EIT) point with vacuum input.
    pub fn new(cooperativity: f64, rho: f64, sigma: f64, gamma_e: f64) -> Self {
        Self {
            cooperativity,
            rho,
            sigma,
            gamma_e,
            delta_bar: 0.0,
            delta_c_bar: 0.0,
            delta_2ph_bar: 0.0,
            r: 0.0,
            squeezed_quadrature_angle: 0.0,
            n_atoms: DEFAULT_ATOM_NUMBER,
        }
    }

    pub fn with_detunings(mut self, delta_bar: f64, delta_c_bar: f64, delta_2ph_bar: f64) -> Self {
        self.delta_bar = delta_bar;
        self.delta_c_bar = delta_c_bar;
        self.delta_2ph_bar = delta_2ph_bar;
        self
    }

    pub fn with_squeezing(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    pub fn with_atoms(mut self, n_atoms: f64) -> Self {
        self.n_atoms = n_atoms;
        self
    }

    pub fn to_params(&self) -> Result<SystemParams> {
        from_dimensionless(self)
    }
}

/// Realizes a dimensionless tuple with γ = 1, τ = 1, κ = 1/ρ, γ0 = σ,
/// Ω = √γ_E and g chosen so that g²N = 2Cκγτ.
pub fn from_dimensionless(d: &Dimensionless) -> Result<SystemParams> {
    non_negative("cooperativity", d.cooperativity)?;
    positive("rho", d.rho)?;
    non_negative("sigma", d.sigma)?;
    non_negative("gamma_e", d.gamma_e)?;
    positive("n_atoms", d.n_atoms)?;

    let gamma = 1.0;
    let tau = 1.0;
    let kappa = 1.0 / d.rho;
    let g = (2.0 * d.cooperativity * kappa * gamma * tau / d.n_atoms).sqrt();
    let params = SystemParams {
        gamma,
        gamma0: d.sigma * gamma,
        kappa,
        tau,
        g,
        n_atoms: d.n_atoms,
        omega: d.gamma_e.sqrt() * gamma,
        delta_1: d.delta_bar * gamma,
        delta_c: d.delta_c_bar * gamma,
        delta_2ph: d.delta_2ph_bar * gamma,
        r_squeeze: d.r,
        squeezed_quadrature_angle: d.squeezed_quadrature_angle,
    };
    params.validate()?;
    Ok(params)
}
