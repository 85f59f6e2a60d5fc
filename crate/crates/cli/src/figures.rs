//! Data behind the published curves. Every figure is a fixed grid, so the
//! output depends only on the code version.

use std::f64::consts::PI;

use anyhow::Result;
use clap::ValueEnum;
use rayon::prelude::*;

use eit_memory::analytic::{
    classify_regime, eta_delta_lf, eta_eit_exact, eta_eit_lf, eta_eit_lossless, eta_general_lf, eta_two_photon_lf,
    Pumping,
};
use eit_memory::readout::{noise_power, ReadoutConfig};
use eit_memory::spectra::{efficiency_sweep, Method, SweepAxis, SweepOptions, SweepRow};
use eit_memory::Dimensionless;

use crate::config::{linspace, logspace};
use crate::table::{Cell, Table};

/// e^{−2r} = 1/2.
pub const R_HALF: f64 = 0.346_573_590_279_972_6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
    ReadoutFlat,
    ReadoutMatched,
}

pub fn run_figure(fig: Figure) -> Result<Table> {
    Ok(match fig {
        Figure::Fig2 => fig2(),
        Figure::Fig3 => fig3(),
        Figure::Fig4 => fig4(),
        Figure::ReadoutFlat => readout_curve("readout_flat", 0.0, logspace(0.05, 20.0, 121))?,
        Figure::ReadoutMatched => readout_curve("readout_matched", 1.0, logspace(0.05, 200.0, 121))?,
    })
}

fn status(row: &SweepRow) -> Cell {
    match &row.outcome {
        Ok(_) => "ok".into(),
        Err(eit_memory::Error::Unstable { .. }) => "unstable".into(),
        Err(_) => "error".into(),
    }
}

fn numeric_cells(row: &SweepRow) -> (Cell, Cell) {
    match &row.outcome {
        Ok(rep) => (rep.efficiency.unwrap_or(f64::NAN).into(), rep.squeezed_angle.into()),
        Err(_) => (f64::NAN.into(), f64::NAN.into()),
    }
}

pub fn fig2_base(sigma: f64) -> Dimensionless {
    Dimensionless::new(100.0, 0.1, sigma, 15.0).with_squeezing(R_HALF)
}

fn fig2() -> Table {
    let mut grid = vec![0.0];
    grid.extend(logspace(1e-2, 1e3, 60));
    let options = SweepOptions { method: Method::Lyapunov, track_optimal: true };
    let lossless = fig2_base(0.0);
    let lossy = fig2_base(1e-3);
    let a = efficiency_sweep(&lossless, SweepAxis::DeltaBar, &grid, options);
    let b = efficiency_sweep(&lossy, SweepAxis::DeltaBar, &grid, options);

    let mut t = Table::new(
        "figure: fig2 (efficiency versus one-photon detuning under the optimal Δ_c and δ)",
        &[
            "delta_bar",
            "eta_numeric",
            "eta_closed_form",
            "theta_sq",
            "status",
            "eta_numeric_lossy",
            "eta_closed_form_lossy",
            "theta_sq_lossy",
            "status_lossy",
        ],
    );
    t.echo_params("series", &lossless);
    t.echo_params("series_lossy", &lossy);
    t.comment("theta_sq is measured from Jx towards Jy; the low-frequency law gives pi - arctan(delta_bar)");
    for (ra, rb) in a.iter().zip(&b) {
        let (eta_a, th_a) = numeric_cells(ra);
        let (eta_b, th_b) = numeric_cells(rb);
        t.push(vec![
            ra.value.into(),
            eta_a,
            eta_delta_lf(lossless.cooperativity, lossless.gamma_e, 0.0, ra.value).into(),
            th_a,
            status(ra),
            eta_b,
            eta_delta_lf(lossy.cooperativity, lossy.gamma_e, lossy.sigma, rb.value).into(),
            th_b,
            status(rb),
        ]);
    }
    t
}

pub fn fig3_grid() -> Vec<f64> {
    let mut grid = logspace(1e-3, 1e3, 80);
    grid.push(15.0);
    grid.sort_by(f64::total_cmp);
    grid
}

fn fig3() -> Table {
    let (c, sigma, rho) = (100.0, 1e-3, 0.5);
    let base = Dimensionless::new(c, rho, sigma, 15.0).with_squeezing(R_HALF);
    let rows = efficiency_sweep(&base, SweepAxis::GammaE, &fig3_grid(), SweepOptions::default());
    let mut t = Table::new(
        "figure: fig3 (exact EIT efficiency versus pumping rate)",
        &["gamma_E", "eta_exact", "eta_numeric", "eta_lf", "eta_lossless", "regime"],
    );
    t.echo_params("series", &base);
    for row in &rows {
        let g = row.value;
        let (eta_num, _) = numeric_cells(row);
        t.push(vec![
            g.into(),
            eta_eit_exact(c, g, sigma, rho).into(),
            eta_num,
            eta_eit_lf(c, g, sigma).into(),
            eta_eit_lossless(c, g, rho).into(),
            classify_regime(c, Pumping::Eit { gamma_e: g }, sigma, rho).to_string().into(),
        ]);
    }
    t
}

/// EIT and Raman points with the same γ̃0 = 75γ0 at C = 100, σ = 10⁻³, ρ = 1/2.
/// The Raman branch sits at Δ̄ = 10⁶, deep in the large-detuning limit.
pub fn fig4_bases() -> (Dimensionless, Dimensionless) {
    let (c, rho, sigma) = (100.0, 0.5, 1e-3);
    let pumping = 74.0 * sigma;
    let eit = Dimensionless::new(c, rho, sigma, pumping * (1.0 + 2.0 * c)).with_squeezing(R_HALF);
    let detuning = 1e6;
    let gamma_r = pumping / (1.0 + 2.0 * c);
    let raman = Dimensionless::new(c, rho, sigma, gamma_r * detuning * detuning)
        .with_detunings(detuning, 0.0, 0.0)
        .with_squeezing(R_HALF);
    (eit, raman)
}

fn fig4() -> Table {
    let (eit, raman) = fig4_bases();
    let sigma = eit.sigma;
    let grid = linspace(-300.0, 300.0, 121);
    let offsets: Vec<f64> = grid.iter().map(|x| x * sigma).collect();
    let options = SweepOptions { method: Method::Lyapunov, track_optimal: true };
    let a = efficiency_sweep(&eit, SweepAxis::Delta2ph, &offsets, options);
    let b = efficiency_sweep(&raman, SweepAxis::Delta2ph, &offsets, options);
    let pumping = 74.0 * sigma;
    let gamma_tilde0 = sigma + pumping;
    let eta0 = eta_general_lf(eit.cooperativity, pumping, sigma);

    let mut t = Table::new(
        "figure: fig4 (efficiency versus residual two-photon detuning, matched gamma_tilde0 = 75 gamma0)",
        &[
            "delta_2ph_over_gamma0",
            "eta_numeric",
            "eta_closed_form",
            "theta_sq",
            "status",
            "eta_numeric_raman",
            "eta_closed_form_raman",
            "theta_sq_raman",
            "status_raman",
        ],
    );
    t.echo_params("series", &eit);
    t.echo_params("series_raman", &raman);
    for ((x, ra), rb) in grid.iter().zip(&a).zip(&b) {
        let closed = eta_two_photon_lf(eta0, eit.r, x * sigma / gamma_tilde0);
        let (eta_a, th_a) = numeric_cells(ra);
        let (eta_b, th_b) = numeric_cells(rb);
        t.push(vec![(*x).into(), eta_a, closed.into(), th_a, status(ra), eta_b, closed.into(), th_b, status(rb)]);
    }
    t
}

fn readout_curve(name: &str, zeta: f64, grid: Vec<f64>) -> Result<Table> {
    let base = ReadoutConfig {
        a: 1.0,
        b: 2.0 * PI,
        zeta,
        r_at: 0.5,
        cooperativity: 100.0,
        gamma_e: 15.0,
        sigma: 1e-3,
        rho: 0.5,
        t_delay: 0.0,
    };
    let reports: Vec<_> = grid
        .par_iter()
        .map(|&a| noise_power(&ReadoutConfig { a, b: 2.0 * PI / a, ..base }))
        .collect::<Result<_, _>>()?;
    let mut t = Table::new(
        &format!("figure: {name} (analyzer noise at the Fourier limit b = 2 pi / a)"),
        &["a", "P_over_dw", "R_out", "mu"],
    );
    t.comment(format!("zeta={} r_at={} t_delay={}", base.zeta, base.r_at, base.t_delay));
    for (a, rep) in grid.iter().zip(reports) {
        t.push(vec![(*a).into(), rep.p_over_dw.into(), rep.r_out.into(), rep.mu.into()]);
    }
    Ok(t)
}
