//! Homodyne retrieval of the stored spin squeezing after the pump is switched
//! back on.
//!
//! The outgoing amplitude quadrature has correlations
//! C(τ, τ′) = δ(τ − τ′) − [4CΓ_E/(1+2C)²]·R_at·e^{−γ̃0(τ+τ′)}.
//! A spectrum analyzer with bandwidth Δω, integration window T₀ starting at t
//! and a local oscillator e^{−ζγ̃0(τ−t)} then reads
//! P(t)/Δω = N(a, ζ) − S(a, b, ζ)·R_at·e^{−2γ̃0 t}, with a = γ̃0T₀ and
//! b = Δω/γ̃0. The delta part of C gives N in closed form; only the smooth part
//! needs quadrature. S assumes the kernel amplitude equals 2γ̃0, which holds
//! for C ≫ 1 and Γ_E/(1+2C) ≫ γ0 (see [`kernel_weight`]).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::analytic::{classify_regime, Pumping, Regime};
use crate::error::{Error, Result};
use crate::optimize::scan_then_golden;
use crate::quadrature::{integrate, QuadratureConfig};

const SIGNAL_QUADRATURE: QuadratureConfig = QuadratureConfig { abs_tol: 1e-11, rel_tol: 1e-13, max_intervals: 20_000 };

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadoutConfig {
    /// a = γ̃0·T₀.
    pub a: f64,
    /// b = Δω/γ̃0.
    pub b: f64,
    /// LO decay in units of γ̃0; 0 is a flat LO.
    pub zeta: f64,
    /// Stored squeezing R_at = 1 − ΔJ²_min.
    pub r_at: f64,
    pub cooperativity: f64,
    /// Γ_E/γ.
    pub gamma_e: f64,
    /// γ0/γ.
    pub sigma: f64,
    /// γ/κ.
    pub rho: f64,
    /// γ̃0·t since the pump was switched back on.
    pub t_delay: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ReadoutWarning {
    /// Outside γ0 ≪ Γ_E/(1+2C) ≪ γ, κ, where the kernel form is derived.
    OutsideGoodRegime(Regime),
}

impl ReadoutConfig {
    pub fn validate(&self) -> Result<Vec<ReadoutWarning>> {
        let checks: [(&'static str, f64, bool, &'static str); 8] = [
            ("a", self.a, self.a > 0.0, "must be > 0"),
            ("b", self.b, self.b > 0.0, "must be > 0"),
            ("zeta", self.zeta, self.zeta >= 0.0, "must be >= 0"),
            ("r_at", self.r_at, (0.0..1.0).contains(&self.r_at), "must lie in [0, 1)"),
            ("cooperativity", self.cooperativity, self.cooperativity >= 0.0, "must be >= 0"),
            ("gamma_e", self.gamma_e, self.gamma_e >= 0.0, "must be >= 0"),
            ("sigma", self.sigma, self.sigma >= 0.0, "must be >= 0"),
            ("rho", self.rho, self.rho > 0.0, "must be > 0"),
        ];
        for (field, value, ok, reason) in checks {
            if !value.is_finite() {
                return Err(Error::InvalidParameter { field, value, reason: "must be finite" });
            }
            if !ok {
                return Err(Error::InvalidParameter { field, value, reason });
            }
        }
        if !(self.t_delay >= 0.0 && self.t_delay.is_finite()) {
            return Err(Error::InvalidParameter { field: "t_delay", value: self.t_delay, reason: "must be finite and >= 0" });
        }
        let product = self.a * self.b;
        if product < 2.0 * PI * (1.0 - 1e-12) {
            return Err(Error::FourierLimit { product });
        }
        let regime = classify_regime(self.cooperativity, Pumping::Eit { gamma_e: self.gamma_e }, self.sigma, self.rho);
        Ok(if regime == Regime::II { Vec::new() } else { vec![ReadoutWarning::OutsideGoodRegime(regime)] })
    }

    /// γ̃0/γ = σ + γ_E/(1+2C).
    pub fn gamma_tilde0(&self) -> f64 {
        self.sigma + self.gamma_e / (1.0 + 2.0 * self.cooperativity)
    }
}

/// Smooth part of C(τ, τ′) in units of γ, with τ and τ′ in units of 1/γ̃0.
pub fn correlation_kernel(cfg: &ReadoutConfig, tau: f64, tau_prime: f64) -> f64 {
    let c = cfg.cooperativity;
    let amplitude = 4.0 * c * cfg.gamma_e / ((1.0 + 2.0 * c) * (1.0 + 2.0 * c));
    -amplitude * cfg.r_at * (-(tau + tau_prime)).exp()
}

/// Kernel amplitude 4CΓ_E/(1+2C)² relative to the 2γ̃0 that the S formulas assume.
pub fn kernel_weight(cooperativity: f64, gamma_e: f64, sigma: f64) -> f64 {
    let one_2c = 1.0 + 2.0 * cooperativity;
    let amplitude = 4.0 * cooperativity * gamma_e / (one_2c * one_2c);
    amplitude / (2.0 * (sigma + gamma_e / one_2c))
}

/// S(a, b) for a flat local oscillator.
pub fn signal_integral_s(a: f64, b: f64) -> f64 {
    signal_integral_s_matched(a, b, 0.0)
}

/// S(a, b, ζ) = (2/ab)∫_{−b/2}^{b/2} dω̄ (1 + e^{−2a′} − 2e^{−a′}cos aω̄)/((1+ζ)² + ω̄²),
/// a′ = a(1+ζ). The integrand is even, so only ω̄ ≥ 0 is integrated.
pub fn signal_integral_s_matched(a: f64, b: f64, zeta: f64) -> f64 {
    let decay = 1.0 + zeta;
    let shifted = a * decay;
    let amp = -(-shifted).exp_m1();
    let cross = 4.0 * (-shifted).exp();
    let width2 = decay * decay;
    let integrand = |w: f64| -> Result<[f64; 1]> {
        let s = (0.5 * a * w).sin();
        Ok([(amp * amp + cross * s * s) / (width2 + w * w)])
    };
    let upper = 0.5 * b;
    // one breakpoint per period of the cosine (capped) and one at the Lorentzian width
    let period = 2.0 * PI / a;
    let periods = ((upper / period).floor() as usize).min(2000);
    let mut points: Vec<f64> = (0..=periods).map(|k| k as f64 * period).filter(|&p| p < upper).collect();
    if decay < upper {
        points.push(decay);
    }
    points.push(upper);
    points.sort_by(f64::total_cmp);
    points.dedup();
    let est = integrate(integrand, &points, &SIGNAL_QUADRATURE).expect("smooth bounded integrand");
    4.0 * est.value[0] / (a * b)
}

/// N(a, ζ) = (1 − e^{−2ζa})/(2ζa), the LO-weighted vacuum level.
pub fn noise_floor_n(a: f64, zeta: f64) -> f64 {
    let x = 2.0 * zeta * a;
    if x == 0.0 {
        1.0
    } else {
        -(-x).exp_m1() / x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReadoutEfficiency {
    /// S(a, b, ζ)/N(a, ζ).
    pub mu: f64,
    /// 4ζ/(1+ζ)², the a → ∞ limit at b = 2π/a.
    pub mu_asymptotic: f64,
}

pub fn readout_efficiency(a: f64, b: f64, zeta: f64) -> ReadoutEfficiency {
    ReadoutEfficiency {
        mu: signal_integral_s_matched(a, b, zeta) / noise_floor_n(a, zeta),
        mu_asymptotic: 4.0 * zeta / ((1.0 + zeta) * (1.0 + zeta)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReadoutReport {
    /// P(t)/Δω.
    pub p_over_dw: f64,
    /// Retrieved squeezing S/N·R_at·e^{−2γ̃0t}.
    pub r_out: f64,
    pub noise_floor: f64,
    pub signal: f64,
    pub mu: f64,
}

/// Analyzer reading at t = `cfg.t_delay`.
pub fn noise_power(cfg: &ReadoutConfig) -> Result<ReadoutReport> {
    cfg.validate()?;
    let noise_floor = noise_floor_n(cfg.a, cfg.zeta);
    let signal = signal_integral_s_matched(cfg.a, cfg.b, cfg.zeta);
    let decay = (-2.0 * cfg.t_delay).exp();
    Ok(ReadoutReport {
        p_over_dw: noise_floor - signal * decay * cfg.r_at,
        r_out: signal / noise_floor * decay * cfg.r_at,
        noise_floor,
        signal,
        mu: signal / noise_floor,
    })
}

/// R_out(t) = S/N·e^{−2t}·R_at with t in units of 1/γ̃0.
pub fn r_out(a: f64, b: f64, zeta: f64, r_at: f64, t: f64) -> f64 {
    readout_efficiency(a, b, zeta).mu * (-2.0 * t).exp() * r_at
}

/// Squeezing left after the pump-off storage interval: the spin decays at γ0,
/// so its variance excess decays as e^{−2γ0·delay}.
pub fn stored_squeezing_after(r_at: f64, gamma0_delay: f64) -> f64 {
    r_at * (-2.0 * gamma0_delay).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatOptimum {
    pub a: f64,
    pub b: f64,
    pub s: f64,
}

/// Maximizes S(a, 2π/a) over a.
pub fn optimize_flat_readout() -> FlatOptimum {
    let best = scan_then_golden(|a| signal_integral_s(a, 2.0 * PI / a), 0.05, 10.0, 200, 1e-9, 0.0);
    FlatOptimum { a: best.argmax, b: 2.0 * PI / best.argmax, s: best.value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn cfg() -> ReadoutConfig {
        ReadoutConfig {
            a: 1.3,
            b: 2.0 * PI / 1.3,
            zeta: 0.0,
            r_at: 0.5,
            cooperativity: 100.0,
            gamma_e: 15.0,
            sigma: 1e-3,
            rho: 0.5,
            t_delay: 0.0,
        }
    }

    fn simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
        let n = n + n % 2;
        let h = (hi - lo) / n as f64;
        let mut sum = f(lo) + f(hi);
        for i in 1..n {
            sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(lo + h * i as f64);
        }
        sum * h / 3.0
    }

    /// Smooth-kernel contribution to P/Δω straight from its definition:
    /// (1/(T₀Δω))∫dω |∫_window LO(τ)e^{iωτ}e^{−γ̃0τ}dτ|²·2γ̃0, with the time
    /// integral done numerically (γ̃0 = 1, window starting at t = 0).
    fn signal_from_definition(a: f64, b: f64, zeta: f64) -> f64 {
        let amplitude = |w: f64| {
            let re = simpson(|s| (-(1.0 + zeta) * s).exp() * (w * s).cos(), 0.0, a, 400);
            let im = simpson(|s| (-(1.0 + zeta) * s).exp() * (w * s).sin(), 0.0, a, 400);
            re * re + im * im
        };
        2.0 * simpson(amplitude, -0.5 * b, 0.5 * b, 400) / (a * b)
    }

    #[test]
    fn kernel_examples() {
        let mut c = cfg();
        c.r_at = 1.0;
        let k0 = correlation_kernel(&c, 0.0, 0.0);
        assert_relative_eq!(k0, -4.0 * 100.0 * 15.0 / (201.0 * 201.0), max_relative = 1e-14);
        assert!((k0 + 0.1485).abs() < 1e-4);
        assert!(correlation_kernel(&c, 40.0, 40.0).abs() < 1e-30);
        c.r_at = 0.0;
        assert_eq!(correlation_kernel(&c, 0.3, 0.1), 0.0);
    }

    #[test]
    fn kernel_weight_approaches_one() {
        assert!((kernel_weight(100.0, 15.0, 1e-3) - 1.0).abs() < 0.02);
        assert!((kernel_weight(1e4, 1e3, 1e-6) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn signal_matches_definition() {
        for (a, b, zeta) in [(1.3, 2.0 * PI / 1.3, 0.0), (3.0, 4.0, 0.5), (0.7, 12.0, 2.0)] {
            let quad = signal_integral_s_matched(a, b, zeta);
            let brute = signal_from_definition(a, b, zeta);
            assert_relative_eq!(quad, brute, max_relative = 1e-7);
        }
    }

    #[test]
    fn flat_signal_examples() {
        let s = signal_integral_s(1.3, 2.0 * PI / 1.3);
        assert!((s - 0.64).abs() < 0.005, "{s}");
        assert!(signal_integral_s(1e-3, 2.0 * PI / 1e-3) < 1e-2);
        // the closed-form bounds 2/(ab)·2atan(b/2)·[(1−e^{−a})², (1−e^{−a})² + 4e^{−a}]
        let (a, b) = (10.0, 2.0 * PI / 10.0);
        let s = signal_integral_s(a, b);
        let base = 4.0 * (0.5 * b).atan() / (a * b);
        let lower = base * (-(-a).exp_m1()).powi(2);
        let upper = lower + base * 4.0 * (-a).exp();
        assert!(lower <= s && s <= upper, "{lower} {s} {upper}");
        assert!((s - 0.193784).abs() < 1e-5, "{s}");
    }

    #[test]
    fn zeta_zero_is_flat() {
        for (a, b) in [(1.3, 5.0), (7.0, 1.0), (0.2, 40.0)] {
            assert_eq!(signal_integral_s_matched(a, b, 0.0), signal_integral_s(a, b));
        }
    }

    #[test]
    fn matched_large_window_asymptote() {
        let a = 50.0;
        let s = signal_integral_s_matched(a, 2.0 * PI / a, 1.0);
        assert!((s / 0.01 - 1.0).abs() < 0.1, "{s}");
    }

    #[test]
    fn noise_floor_examples() {
        assert_eq!(noise_floor_n(3.0, 0.0), 1.0);
        assert_relative_eq!(noise_floor_n(1.0, 1.0), (1.0 - (-2.0f64).exp()) / 2.0, max_relative = 1e-15);
        assert!((noise_floor_n(1.0, 1.0) - 0.43233).abs() < 1e-5);
        assert!(noise_floor_n(1e3, 10.0) < 1e-4);
        assert!((noise_floor_n(1e-12, 1.0) - 1.0).abs() < 1e-11);
    }

    #[test]
    fn efficiency_examples() {
        let a = 50.0;
        let e = readout_efficiency(a, 2.0 * PI / a, 1.0);
        assert!(e.mu >= 0.95 && e.mu <= 1.0 + 1e-6, "{}", e.mu);
        assert_eq!(e.mu_asymptotic, 1.0);
        assert_eq!(readout_efficiency(a, 2.0 * PI / a, 3.0).mu_asymptotic, 0.75);
        let flat = readout_efficiency(1.3, 2.0 * PI / 1.3, 0.0);
        assert!((flat.mu - 0.64).abs() < 0.01);
    }

    #[test]
    fn noise_power_examples() {
        let rep = noise_power(&cfg()).unwrap();
        assert!((rep.p_over_dw - 0.68).abs() < 0.005, "{}", rep.p_over_dw);
        assert_relative_eq!(rep.p_over_dw, 1.0 - rep.signal * 0.5, max_relative = 1e-15);
        let mut c = cfg();
        c.r_at = 0.0;
        assert_eq!(noise_power(&c).unwrap().p_over_dw, 1.0);
        c.r_at = 0.9;
        c.zeta = 0.5;
        c.t_delay = 400.0;
        let rep = noise_power(&c).unwrap();
        assert_eq!(rep.p_over_dw, noise_floor_n(c.a, 0.5));
    }

    #[test]
    fn validation() {
        let mut c = cfg();
        assert_eq!(c.validate().unwrap(), vec![]);
        c.b = 2.0 * PI / 1.3 * 0.99;
        assert!(matches!(c.validate(), Err(Error::FourierLimit { .. })));
        c = cfg();
        c.r_at = 1.0;
        assert!(matches!(c.validate(), Err(Error::InvalidParameter { field: "r_at", .. })));
        c = cfg();
        c.gamma_e = 1e4;
        assert_eq!(c.validate().unwrap(), vec![ReadoutWarning::OutsideGoodRegime(Regime::III)]);
    }

    #[test]
    fn flat_optimum() {
        let opt = optimize_flat_readout();
        assert!((opt.a - 1.3).abs() < 0.05, "{}", opt.a);
        assert!((opt.s - 0.64).abs() < 0.01, "{}", opt.s);
        assert!(signal_integral_s(opt.a, 4.0 * PI / opt.a) < opt.s);
    }

    #[test]
    fn storage_decay() {
        assert_eq!(stored_squeezing_after(0.6, 0.0), 0.6);
        assert_relative_eq!(stored_squeezing_after(0.6, 0.5), 0.6 / std::f64::consts::E);
    }

    #[test]
    fn r_out_log_slope() {
        let (a, b) = (2.0, 2.0 * PI / 2.0);
        for t in [0.0, 0.5, 3.0] {
            let h = 1e-3;
            let slope = (r_out(a, b, 1.0, 0.7, t + h).ln() - r_out(a, b, 1.0, 0.7, t).ln()) / h;
            assert!((slope + 2.0).abs() < 1e-6, "{slope}");
        }
    }

    proptest! {
        #[test]
        fn mu_and_power_bounds(a in 0.1f64..60.0, stretch in 1.0f64..4.0, zeta in 0.0f64..5.0, r_at in 0.0f64..0.999) {
            let b = 2.0 * PI / a * stretch;
            let mu = readout_efficiency(a, b, zeta).mu;
            prop_assert!((0.0..=1.0 + 1e-6).contains(&mu), "{}", mu);
            let mut c = cfg();
            c.a = a;
            c.b = b;
            c.zeta = zeta;
            c.r_at = r_at;
            let rep = noise_power(&c).unwrap();
            prop_assert!(rep.p_over_dw >= 0.0 && rep.p_over_dw <= rep.noise_floor);
        }
    }
}
