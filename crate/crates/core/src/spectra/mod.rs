//! Steady-state spin covariance by two independent routes (frequency
//! integration of the spectra and the algebraic Lyapunov equation), output
//! field spectra and parameter sweeps.

mod covariance;
mod output;
mod sweep;

pub use covariance::{covariance_by_integration, covariance_by_lyapunov, integration_breakpoints};
pub use output::{output_spectrum, OutputSpectrumPoint};
pub use sweep::{efficiency_sweep, point_for, Method, SweepAxis, SweepOptions, SweepRow};

use nalgebra::Matrix2;
use std::f64::consts::PI;

/// Normalized ground-state spin statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceReport {
    /// Symmetrized ⟨δJ_i δJ_j⟩ for i, j ∈ {x, y}, divided by N/4.
    pub spin_cov: Matrix2<f64>,
    /// ΔJ²_min; 1 is the coherent-state level.
    pub min_variance: f64,
    /// Angle in [0, π) of the minimal-variance component, measured from x
    /// towards y.
    pub squeezed_angle: f64,
    /// η = (1 − ΔJ²_min)/(1 − e^{−2r}); `None` for vacuum input.
    pub efficiency: Option<f64>,
    /// Set when the two eigenvalues coincide; the angle is then reported as 0.
    pub degenerate: bool,
}

impl CovarianceReport {
    pub fn from_spin_cov(spin_cov: Matrix2<f64>, r_squeeze: f64) -> Self {
        let a = spin_cov[(0, 0)];
        let c = spin_cov[(1, 1)];
        let b = 0.5 * (spin_cov[(0, 1)] + spin_cov[(1, 0)]);
        let spin_cov = Matrix2::new(a, b, b, c);
        let radius = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        let min_variance = 0.5 * (a + c) - radius;
        let degenerate = radius <= 1e-12 * a.abs().max(c.abs());
        let squeezed_angle = if degenerate {
            0.0
        } else {
            // V(θ) = (a+c)/2 + (a−c)/2·cos 2θ + b·sin 2θ
            (0.5 * (-2.0 * b).atan2(c - a)).rem_euclid(PI)
        };
        let efficiency = if r_squeeze > 0.0 {
            Some((1.0 - min_variance) / -(-2.0 * r_squeeze).exp_m1())
        } else {
            None
        };
        Self { spin_cov, min_variance, squeezed_angle, efficiency, degenerate }
    }

    /// Normalized variance of the spin component cos θ·δJx + sin θ·δJy.
    pub fn variance_at(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let m = &self.spin_cov;
        c * c * m[(0, 0)] + 2.0 * s * c * m[(0, 1)] + s * s * m[(1, 1)]
    }
}
