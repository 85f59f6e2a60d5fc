use nalgebra::{Complex, DMatrix, DVector, Matrix2, SMatrix};

use super::CovarianceReport;
use crate::error::{Error, Result};
use crate::langevin::{LinearModel, Matrix6};
use crate::quadrature::{integrate, integrate_tail, QuadratureConfig};

/// Initial partition of [0, W] for the spectral integral: every pole's
/// position |Im λ| and offsets of a few widths |Re λ| around it, plus the
/// cut-off W = 100·max|λ| where the compactified tail takes over.
pub fn integration_breakpoints(model: &LinearModel) -> (Vec<f64>, f64) {
    let eigs = model.eigenvalues();
    let top = eigs.iter().map(|l| l.norm()).fold(0.0f64, f64::max);
    let cutoff = 100.0 * top;
    let mut points = vec![0.0, cutoff];
    for l in &eigs {
        let center = l.im.abs();
        let width = l.re.abs();
        points.push(center);
        for k in [0.1, 1.0, 10.0, 100.0] {
            points.push(center + k * width);
            points.push(center - k * width);
        }
    }
    points.retain(|p| *p >= 0.0 && *p <= cutoff);
    points.sort_by(f64::total_cmp);
    points.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * cutoff);
    (points, cutoff)
}

/// (1/2π)∫ S(ω) dω over the real line, with S(ω) = H(ω)·S_u·H(ω)† and
/// H = (−iω − M)⁻¹B, folded onto ω ≥ 0 as (1/π)∫₀^∞ Re S(ω) dω.
/// Only the spin block is integrated.
pub fn covariance_by_integration(model: &LinearModel, cfg: &QuadratureConfig) -> Result<CovarianceReport> {
    model.ensure_stable()?;
    let balanced = model.balanced();
    let q = balanced.input_psd.map(|v| Complex::new(v, 0.0));
    let spectrum = |omega: f64| -> Result<[f64; 3]> {
        let h = balanced.response(omega)?;
        let spin: SMatrix<Complex<f64>, 2, 6> = h.fixed_rows::<2>(0).into_owned();
        let s = spin * q * spin.adjoint();
        Ok([s[(0, 0)].re, s[(0, 1)].re, s[(1, 1)].re])
    };
    let (points, cutoff) = integration_breakpoints(model);
    let body = integrate(spectrum, &points, cfg)?;
    let tail = integrate_tail(spectrum, cutoff, cfg)?;
    let v: Vec<f64> = (0..3).map(|k| (body.value[k] + tail.value[k]) / std::f64::consts::PI).collect();
    let cov = Matrix2::new(v[0], v[1], v[1], v[2]);
    Ok(CovarianceReport::from_spin_cov(cov, model.r_squeeze))
}

/// Solves M·Σ + Σ·Mᵀ + D = 0 through its vectorized form
/// (I⊗M + M⊗I)·vec Σ = −vec D.
pub fn covariance_by_lyapunov(model: &LinearModel) -> Result<CovarianceReport> {
    model.ensure_stable()?;
    let balanced = model.balanced();
    let sigma = solve_lyapunov(&balanced.drift, &balanced.diffusion())?;
    let cov = Matrix2::new(sigma[(0, 0)], sigma[(0, 1)], sigma[(1, 0)], sigma[(1, 1)]);
    Ok(CovarianceReport::from_spin_cov(cov, model.r_squeeze))
}

fn solve_lyapunov(m: &Matrix6, d: &Matrix6) -> Result<Matrix6> {
    const N: usize = 6;
    let mut op = DMatrix::<f64>::zeros(N * N, N * N);
    // column-major vec: Σ[(i, j)] ↦ i + N·j
    for j in 0..N {
        for i in 0..N {
            let row = i + N * j;
            for k in 0..N {
                op[(row, k + N * j)] += m[(i, k)];
                op[(row, i + N * k)] += m[(j, k)];
            }
        }
    }
    let rhs = DVector::from_iterator(N * N, d.iter().map(|v| -v));
    let x = op.lu().solve(&rhs).ok_or(Error::Singular { what: "Lyapunov equation" })?;
    let sigma = Matrix6::from_column_slice(x.as_slice());
    Ok(0.5 * (sigma + sigma.transpose()))
}
