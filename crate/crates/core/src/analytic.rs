//! Closed-form transfer efficiencies, optimal operating conditions and
//! asymptotics. Every rate argument is dimensionless, in units of γ:
//! `gamma_e` = Γ_E/γ, `gamma_r` = Γ_R/γ, `sigma` = γ0/γ, `rho` = γ/κ.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::scan_then_golden;

/// η_max = 2C/(1+2C), the closed-system limit.
pub fn eta_max(c: f64) -> f64 {
    2.0 * c / (1.0 + 2.0 * c)
}

/// η = η_max·Γ/(γ0 + Γ) for an effective pumping rate Γ.
pub fn eta_general_lf(c: f64, gamma_eff: f64, sigma: f64) -> f64 {
    if gamma_eff == 0.0 {
        return 0.0;
    }
    eta_max(c) * gamma_eff / (sigma + gamma_eff)
}

/// Low-frequency EIT efficiency, Γ = Γ_E/(1+2C).
pub fn eta_eit_lf(c: f64, gamma_e: f64, sigma: f64) -> f64 {
    eta_general_lf(c, gamma_e / (1.0 + 2.0 * c), sigma)
}

/// Low-frequency Raman efficiency, Γ = (1+2C)Γ_R.
pub fn eta_raman_lf(c: f64, gamma_r: f64, sigma: f64) -> f64 {
    eta_general_lf(c, (1.0 + 2.0 * c) * gamma_r, sigma)
}

/// Cavity and two-photon detunings that null the effective detunings Δ̃_c and δ̃.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalConditions {
    pub delta_c: f64,
    pub delta_2ph: f64,
}

/// Δ_c = 2Cκ·γΔ/(γ²+Δ²) and
/// δ = −Γ_E·[γΔ³ + (1−2C)γ³Δ] / ((γ²+Δ²)[(1+2C)γ² + Δ²]), with Δ = Δ̄γ
/// and Γ_E = γ_E·γ. Results are in the same units as `kappa` and `gamma`.
///
/// The γ²+Δ² denominator is the dimensionally consistent form and reproduces
/// the Raman limit Δ_c → g²N/(Δτ).
pub fn optimal_conditions(c: f64, kappa: f64, gamma: f64, gamma_e: f64, delta_bar: f64) -> OptimalConditions {
    let delta = delta_bar * gamma;
    let g2 = gamma * gamma;
    let d2 = delta * delta;
    let pump_rate = gamma_e * gamma;
    let delta_c = 2.0 * c * kappa * gamma * delta / (g2 + d2);
    let delta_2ph = -pump_rate * (gamma * d2 * delta + (1.0 - 2.0 * c) * g2 * gamma * delta)
        / ((g2 + d2) * ((1.0 + 2.0 * c) * g2 + d2));
    OptimalConditions { delta_c, delta_2ph }
}

/// Low-frequency efficiency at one-photon detuning Δ̄ under the optimal conditions.
pub fn eta_delta_lf(c: f64, gamma_e: f64, sigma: f64, delta_bar: f64) -> f64 {
    let d2 = delta_bar * delta_bar;
    let one_d2 = 1.0 + d2;
    let k = 1.0 + 2.0 * c + d2;
    let numerator = 2.0 * c * gamma_e * one_d2 * one_d2 / k;
    let denominator = sigma * one_d2 * k + gamma_e * (1.0 + (1.0 + 2.0 * c) * d2);
    if numerator == 0.0 {
        return 0.0;
    }
    numerator / denominator
}

/// Large-detuning optimum with ground-state losses (C ≫ 1, γ0 ≪ Γ_E):
/// Δ̄* ≈ √(2C)(Γ_E/γ0)^{1/4} and η* ≈ η_max(1 − 2√(γ0/Γ_E)).
pub fn raman_optimum_asymptotic(c: f64, gamma_e: f64, sigma: f64) -> (f64, f64) {
    let delta_bar = (2.0 * c).sqrt() * (gamma_e / sigma).powf(0.25);
    let eta = eta_max(c) * (1.0 - 2.0 * (sigma / gamma_e).sqrt());
    (delta_bar, eta)
}

/// Rotation of the squeezed spin axis away from x: arctan Δ̄.
///
/// In the (δJx, δJy) frame of [`crate::langevin`] the rotation is clockwise,
/// so the covariance reports θ_sq = π − arctan Δ̄ (mod π).
pub fn squeezed_angle_lf(delta_bar: f64) -> f64 {
    delta_bar.atan()
}

/// Exact EIT efficiency of the decoupled model after integration over all
/// frequencies.
pub fn eta_eit_exact(c: f64, gamma_e: f64, sigma: f64, rho: f64) -> f64 {
    if gamma_e == 0.0 {
        return 0.0;
    }
    let first = 2.0 * c * gamma_e / ((1.0 + 2.0 * c) * sigma + gamma_e);
    let a = 1.0 + rho + sigma * rho;
    let second = a
        / (2.0 * c * (1.0 + rho)
            + (1.0 + sigma) * (a + sigma * rho * rho + gamma_e * rho * rho));
    first * second
}

/// Exact EIT efficiency of the closed system (γ0 = 0), decreasing in γ_E.
pub fn eta_eit_lossless(c: f64, gamma_e: f64, rho: f64) -> f64 {
    2.0 * c / (1.0 + 2.0 * c + gamma_e * rho * rho / (1.0 + rho))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalPumping {
    /// γ_E* ≈ (1+2C)·√(1+ρ)/ρ·√σ.
    pub asymptotic: f64,
    /// Argmax of [`eta_eit_exact`] over γ_E; 0 when the maximum sits at γ_E → 0⁺.
    pub exact_argmax: f64,
    pub exact_max: f64,
}

pub fn optimal_pumping(c: f64, sigma: f64, rho: f64) -> OptimalPumping {
    let asymptotic = (1.0 + 2.0 * c) * (1.0 + rho).sqrt() / rho * sigma.sqrt();
    if sigma == 0.0 {
        return OptimalPumping {
            asymptotic,
            exact_argmax: 0.0,
            exact_max: eta_eit_lossless(c, 0.0, rho),
        };
    }
    let ln10 = std::f64::consts::LN_10;
    let best = scan_then_golden(
        |ln_g| eta_eit_exact(c, ln_g.exp(), sigma, rho),
        -12.0 * ln10,
        12.0 * ln10,
        241,
        0.0,
        1e-7,
    );
    OptimalPumping { asymptotic, exact_argmax: best.argmax.exp(), exact_max: best.value }
}

/// Efficiency versus residual two-photon detuning δ̃ in the low-frequency
/// model: the spin obeys (γ̃0 − iδ̃ − iω)δP_r = drive, whose stationary
/// covariance keeps the isotropic part and shrinks the anisotropic part by
/// f = 1/√(1 + (δ̃/γ̃0)²). With η0 the resonant efficiency,
/// η(δ̃) = η0·[f·sinh 2r − (cosh 2r − 1)] / (1 − e^{−2r}).
pub fn eta_two_photon_lf(eta0: f64, r: f64, detuning_over_width: f64) -> f64 {
    let f = 1.0 / (1.0 + detuning_over_width * detuning_over_width).sqrt();
    let two_r = 2.0 * r;
    eta0 * (f * two_r.sinh() - (two_r.cosh() - 1.0)) / (-(-two_r).exp_m1())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DarkState {
    /// Minimal normalized spin variance.
    pub variance: f64,
    /// Amplitudes on (|1⟩, |2⟩).
    pub amplitudes: [f64; 2],
}

/// Rotated-basis transfer when both fields carry a mean amplitude: the dark
/// state is (−Ω₂|1⟩ + Ω₁|2⟩)/√(Ω₁²+Ω₂²) and the stored variance is the
/// weighted mix (Ω₂²e^{−2r₁} + Ω₁²e^{−2r₂})/(Ω₁²+Ω₂²).
pub fn dark_state_variance(omega1: f64, omega2: f64, r1: f64, r2: f64) -> Result<DarkState> {
    let norm2 = omega1 * omega1 + omega2 * omega2;
    if !(norm2 > 0.0 && norm2.is_finite()) {
        return Err(Error::InvalidParameter {
            field: "omega1^2 + omega2^2",
            value: norm2,
            reason: "must be finite and > 0",
        });
    }
    let weight1 = omega2 * omega2 / norm2;
    let s1 = (-2.0 * r1).exp();
    let s2 = (-2.0 * r2).exp();
    let norm = norm2.sqrt();
    Ok(DarkState {
        variance: s2 + weight1 * (s1 - s2),
        amplitudes: [-omega2 / norm, omega1 / norm],
    })
}

/// How the ground-state coherence is pumped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Pumping {
    /// One-photon resonant pumping rate γ_E = Γ_E/γ.
    Eit { gamma_e: f64 },
    /// Raman pumping rate γ_R = Γ_R/γ.
    Raman { gamma_r: f64 },
}

impl Pumping {
    /// Γ/γ: Γ_E/(1+2C) for EIT, (1+2C)Γ_R for Raman.
    pub fn effective_rate(&self, c: f64) -> f64 {
        match *self {
            Pumping::Eit { gamma_e } => gamma_e / (1.0 + 2.0 * c),
            Pumping::Raman { gamma_r } => (1.0 + 2.0 * c) * gamma_r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// Γ ≪ γ0: ground-state losses win.
    I,
    /// γ0 ≪ Γ ≪ γ, κ: the good transfer window.
    II,
    /// Γ ≳ γ, κ: adiabatic elimination breaks down.
    III,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::I => "I",
            Regime::II => "II",
            Regime::III => "III",
        };
        f.write_str(s)
    }
}

/// Factor-of-ten boundaries: Γ < γ0/10 is I, Γ > min(γ, κ)/10 is III.
pub fn classify_regime(c: f64, pumping: Pumping, sigma: f64, rho: f64) -> Regime {
    let rate = pumping.effective_rate(c);
    let fast = 1.0f64.min(1.0 / rho);
    if rate < sigma / 10.0 {
        Regime::I
    } else if rate > fast / 10.0 {
        Regime::III
    } else {
        Regime::II
    }
}

/// Maximizes [`eta_delta_lf`] over Δ̄ ∈ [lo, hi] (lo > 0) on a log grid, then
/// refines. With losses the resonant point and the large-detuning peak are
/// separate local maxima, so the bracket selects the branch.
pub fn eta_delta_max(c: f64, gamma_e: f64, sigma: f64, lo: f64, hi: f64) -> (f64, f64) {
    let best = scan_then_golden(
        |ln_d| eta_delta_lf(c, gamma_e, sigma, ln_d.exp()),
        lo.ln(),
        hi.ln(),
        401,
        0.0,
        1e-9,
    );
    (best.argmax.exp(), best.value)
}

/// Half-width of [`eta_two_photon_lf`] in units of γ̃0: the δ̃/γ̃0 at which
/// η drops to half its resonant value.
pub fn two_photon_half_width_lf(r: f64) -> f64 {
    // η/η0 = 1/2 ⇔ f = [(1 − e^{−2r})/2 + cosh 2r − 1] / sinh 2r
    let two_r = 2.0 * r;
    let f = (0.5 * (-(-two_r).exp_m1()) + two_r.cosh() - 1.0) / two_r.sinh();
    (1.0 / (f * f) - 1.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn eit_lf_examples() {
        assert_relative_eq!(eta_eit_lf(100.0, 15.0, 0.0), 200.0 / 201.0, max_relative = 1e-14);
        assert_eq!(eta_eit_lf(0.0, 15.0, 1e-3), 0.0);
        // 200/201 · (15/201)/(1e-3 + 15/201)
        let gamma = 15.0 / 201.0;
        let hand = 200.0 / 201.0 * gamma / (1e-3 + gamma);
        assert_relative_eq!(eta_eit_lf(100.0, 15.0, 1e-3), hand, max_relative = 1e-14);
        assert!((eta_eit_lf(100.0, 15.0, 1e-3) - 0.9819).abs() < 1e-4);
    }

    #[test]
    fn raman_lf_examples() {
        assert_relative_eq!(eta_raman_lf(30.0, 0.2, 0.0), 60.0 / 61.0, max_relative = 1e-14);
        // (1+2C)Γ_R = γ0 halves the efficiency
        let c = 50.0;
        let sigma = 1e-3;
        let half = eta_raman_lf(c, sigma / (1.0 + 2.0 * c), sigma);
        assert_relative_eq!(half, eta_max(c) / 2.0, max_relative = 1e-14);
        // substitution: (1+2C)Γ_R = Γ_E/(1+2C)
        let gamma_r = 15.0 / 201.0 / 201.0;
        assert_relative_eq!(
            eta_raman_lf(100.0, gamma_r, 1e-3),
            eta_eit_lf(100.0, 15.0, 1e-3),
            max_relative = 1e-12
        );
    }

    #[test]
    fn general_lf_limits() {
        assert_relative_eq!(eta_general_lf(10.0, 1e12, 1e-3), eta_max(10.0), max_relative = 1e-12);
        assert_eq!(eta_general_lf(10.0, 0.0, 1e-3), 0.0);
        assert_relative_eq!(eta_general_lf(10.0, 1e-3, 1e-3), eta_max(10.0) / 2.0);
    }

    #[test]
    fn optimal_conditions_vanish_on_resonance() {
        let oc = optimal_conditions(100.0, 2.0, 1.0, 15.0, 0.0);
        assert_eq!(oc.delta_c, 0.0);
        assert_eq!(oc.delta_2ph, 0.0);
    }

    #[test]
    fn optimal_conditions_reach_raman_limit() {
        // Δ_c → g²N/(Δτ) = 2Cκγ/Δ and δ → −Ω²/Δ for Δ ≫ γ
        let (c, kappa, gamma_e) = (100.0, 2.0, 15.0);
        for delta_bar in [1e4, 1e5, 1e6] {
            let oc = optimal_conditions(c, kappa, 1.0, gamma_e, delta_bar);
            let cavity = 2.0 * c * kappa / delta_bar;
            let light_shift = -gamma_e / delta_bar;
            assert_relative_eq!(oc.delta_c, cavity, max_relative = 2.0 / (delta_bar * delta_bar));
            // next order: relative (1+4C)/Δ̄²
            assert_relative_eq!(oc.delta_2ph, light_shift, max_relative = 2.0 * (1.0 + 4.0 * c) / (delta_bar * delta_bar));
        }
    }

    #[test]
    fn eta_delta_reduces_to_eit() {
        for (c, g, s) in [(100.0, 15.0, 1e-3), (3.0, 0.2, 0.05), (1000.0, 1e-3, 0.0)] {
            assert_relative_eq!(eta_delta_lf(c, g, s, 0.0), eta_eit_lf(c, g, s), max_relative = 1e-12);
        }
    }

    #[test]
    fn eta_delta_dip() {
        let c = 100.0;
        assert_relative_eq!(eta_delta_lf(c, 15.0, 0.0, 1.0), 2.0 * c / ((1.0 + c) * (1.0 + c)), max_relative = 1e-14);
        assert!((eta_delta_lf(c, 15.0, 0.0, 1.0) - 0.0196).abs() < 1e-4);
    }

    #[test]
    fn eta_delta_large_detuning_optimum() {
        let (c, g, s) = (100.0, 15.0, 1e-3);
        // the resonant point is the other local maximum: η(0) = 0.9819
        assert!(eta_delta_lf(c, g, s, 0.0) > eta_delta_lf(c, g, s, 156.5));
        let (argmax, max) = eta_delta_max(c, g, s, 10.0, 1e8);
        let (asym_arg, asym_max) = raman_optimum_asymptotic(c, g, s);
        assert_relative_eq!(asym_arg, 200f64.sqrt() * 15000f64.powf(0.25), max_relative = 1e-14);
        assert!((argmax / asym_arg - 1.0).abs() < 0.05, "{argmax} vs {asym_arg}");
        assert!((max / asym_max - 1.0).abs() < 0.01, "{max} vs {asym_max}");
        // brute force over a dense log grid
        let brute = (0..=200_000)
            .map(|i| 10f64.powf(1.0 + 6.0 * i as f64 / 200_000.0))
            .map(|d| eta_delta_lf(c, g, s, d))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(max >= brute - 1e-12);
        assert!(max - brute < 1e-8);
    }

    #[test]
    fn squeezed_angle_values() {
        assert_eq!(squeezed_angle_lf(0.0), 0.0);
        assert_relative_eq!(squeezed_angle_lf(1.0), FRAC_PI_4);
        assert!((squeezed_angle_lf(1e12) - FRAC_PI_2).abs() < 1e-11);
    }

    #[test]
    fn exact_eit_reductions() {
        for (c, g, rho) in [(100.0, 15.0, 0.5), (1.0, 0.1, 2.0), (10.0, 100.0, 0.2)] {
            assert_relative_eq!(eta_eit_exact(c, g, 0.0, rho), eta_eit_lossless(c, g, rho), max_relative = 1e-12);
        }
        assert!(eta_eit_exact(100.0, 1e12, 0.0, 0.5) < 1e-8);
    }

    #[test]
    fn exact_eit_fig3_value() {
        // hand evaluation: 2C·γE/((1+2C)σ+γE) = 3000/15.201,
        // (1+ρ+σρ) = 1.5005, denominator = 300 + 1.001·(1.5005 + 0.00025 + 3.75)
        let first = 3000.0 / 15.201;
        let second = 1.5005 / (300.0 + 1.001 * (1.5005 + 0.00025 + 3.75));
        assert_relative_eq!(eta_eit_exact(100.0, 15.0, 1e-3, 0.5), first * second, max_relative = 1e-13);
        assert!((first * second - 0.970).abs() < 5e-4);
    }

    #[test]
    fn optimal_pumping_fig3() {
        let op = optimal_pumping(100.0, 1e-3, 0.5);
        assert!((op.asymptotic - 15.57).abs() < 0.01);
        assert!(op.exact_argmax > 13.0 && op.exact_argmax < 17.0, "{}", op.exact_argmax);
        assert!((op.exact_max - 0.970).abs() < 5e-4);
        // the maximum is a maximum
        for f in [0.9, 1.1] {
            assert!(eta_eit_exact(100.0, op.exact_argmax * f, 1e-3, 0.5) < op.exact_max);
        }
    }

    #[test]
    fn optimal_pumping_lossless_is_at_boundary() {
        let op = optimal_pumping(100.0, 0.0, 0.5);
        assert_eq!(op.asymptotic, 0.0);
        assert_eq!(op.exact_argmax, 0.0);
        assert_relative_eq!(op.exact_max, 200.0 / 201.0);
    }

    #[test]
    fn optimal_pumping_asymptotic_accuracy() {
        let op = optimal_pumping(100.0, 1e-2, 1.0);
        assert!((op.asymptotic / op.exact_argmax - 1.0).abs() < 0.2);
    }

    #[test]
    fn dark_state_examples() {
        let r = 0.6;
        let ds = dark_state_variance(1.3, 0.0, 0.2, r).unwrap();
        assert_eq!(ds.variance, (-2.0 * r).exp());
        assert_eq!(ds.amplitudes, [0.0, 1.0]);
        for (o1, o2) in [(1.0, 2.0), (0.3, 0.01), (5.0, 5.0)] {
            let ds = dark_state_variance(o1, o2, r, r).unwrap();
            assert_eq!(ds.variance, (-2.0 * r).exp());
        }
        let ds = dark_state_variance(1.0, 1.0, 0.0, r).unwrap();
        assert_relative_eq!(ds.variance, (1.0 + (-2.0 * r).exp()) / 2.0, max_relative = 1e-15);
        assert_relative_eq!(ds.amplitudes[0], -std::f64::consts::FRAC_1_SQRT_2);
        assert!(dark_state_variance(0.0, 0.0, r, r).is_err());
    }

    #[test]
    fn regimes() {
        let (c, sigma, rho) = (100.0, 1e-3, 0.5);
        let eit = |gamma: f64| Pumping::Eit { gamma_e: gamma * 201.0 };
        assert_eq!(classify_regime(c, eit(sigma / 100.0), sigma, rho), Regime::I);
        assert_eq!(classify_regime(c, eit(sigma * 10.0), sigma, rho), Regime::II);
        assert_eq!(classify_regime(c, eit(0.1 / 2.0), sigma, rho), Regime::II);
        assert_eq!(classify_regime(c, eit(10.0 * 2.0), sigma, rho), Regime::III);
        let raman = Pumping::Raman { gamma_r: 0.01 / 201.0 };
        assert_eq!(classify_regime(c, raman, sigma, rho), Regime::II);
        // the γ_E = 15 optimum sits in regime II
        assert_eq!(classify_regime(c, Pumping::Eit { gamma_e: 15.0 }, sigma, rho), Regime::II);
    }

    #[test]
    fn lf_matches_exact_in_regime_two() {
        let (c, sigma, rho) = (100.0, 1e-3, 0.5);
        let mut checked = 0;
        for i in 0..400 {
            let gamma_e = 10f64.powf(-3.0 + 6.0 * i as f64 / 399.0);
            if classify_regime(c, Pumping::Eit { gamma_e }, sigma, rho) == Regime::II {
                let gap = (eta_eit_exact(c, gamma_e, sigma, rho) - eta_eit_lf(c, gamma_e, sigma)).abs();
                assert!(gap < 0.02, "γE = {gamma_e}: gap {gap}");
                checked += 1;
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn two_photon_lf_shape() {
        let r = 0.5 * 2f64.ln();
        assert_relative_eq!(eta_two_photon_lf(0.9, r, 0.0), 0.9, max_relative = 1e-14);
        // e^{-2r} = 1/2: η/η0 = 1.5 f − 0.5, half at f = 2/3
        assert_relative_eq!(eta_two_photon_lf(1.0, r, 1.0), 1.5 / 2f64.sqrt() - 0.5, max_relative = 1e-13);
        assert_relative_eq!(two_photon_half_width_lf(r), 1.25f64.sqrt(), max_relative = 1e-13);
        let w = two_photon_half_width_lf(r);
        assert_relative_eq!(eta_two_photon_lf(0.8, r, w), 0.4, max_relative = 1e-12);
        assert_eq!(eta_two_photon_lf(0.8, r, 0.3), eta_two_photon_lf(0.8, r, -0.3));
    }

    proptest! {
        #[test]
        fn substitution_symmetry(c in 0.0f64..1e3, gamma_e in 0.0f64..1e3, sigma in 0.0f64..0.1) {
            let one_2c = 1.0 + 2.0 * c;
            let gamma_r = gamma_e / (one_2c * one_2c);
            let a = eta_raman_lf(c, gamma_r, sigma);
            let b = eta_eit_lf(c, gamma_e, sigma);
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300) || a == b);
        }

        #[test]
        fn efficiencies_bounded(
            c in 0.0f64..1e3,
            gamma_e in 0.0f64..1e3,
            sigma in 0.0f64..0.5,
            rho in 1e-2f64..1e2,
            delta_bar in -1e4f64..1e4,
        ) {
            for eta in [
                eta_eit_lf(c, gamma_e, sigma),
                eta_delta_lf(c, gamma_e, sigma, delta_bar),
                eta_eit_exact(c, gamma_e, sigma, rho),
                eta_eit_lossless(c, gamma_e, rho),
            ] {
                prop_assert!((0.0..=1.0 + 1e-12).contains(&eta), "{}", eta);
            }
        }

        #[test]
        fn eta_delta_consistency(c in 0.0f64..1e3, gamma_e in 1e-6f64..1e3, sigma in 0.0f64..0.1) {
            let a = eta_delta_lf(c, gamma_e, sigma, 0.0);
            let b = eta_eit_lf(c, gamma_e, sigma);
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300));
        }
    }
}
