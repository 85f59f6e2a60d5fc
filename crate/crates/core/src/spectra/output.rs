use nalgebra::Complex;
use serde::Serialize;

use crate::error::Result;
use crate::langevin::{output_field_map, LinearModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OutputSpectrumPoint {
    pub omega: f64,
    /// Spectrum of δA_p^out; 1 is the vacuum level.
    pub s_p: f64,
    /// Spectrum of δA_q^out.
    pub s_q: f64,
}

/// Symmetrized noise spectra of both output quadratures on `omega_grid`.
pub fn output_spectrum(model: &LinearModel, omega_grid: &[f64]) -> Result<Vec<OutputSpectrumPoint>> {
    model.ensure_stable()?;
    let map = output_field_map(model);
    let q = model.input_psd.map(|v| Complex::new(v, 0.0));
    omega_grid
        .iter()
        .map(|&omega| {
            let h = map.frequency_response(model, omega)?;
            let s = h * q * h.adjoint();
            Ok(OutputSpectrumPoint { omega, s_p: s[(0, 0)].re, s_q: s[(1, 1)].re })
        })
        .collect()
}
