//! Globally adaptive Gauss–Kronrod (G10/K21) quadrature for vector-valued integrands.
//!
//! The interval list starts from caller-supplied breakpoints; the interval with
//! the largest error estimate is bisected until the summed estimate meets
//! `max(abs_tol, rel_tol·‖I‖∞)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1]; odd indices are the Gauss-10 nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { abs_tol: 0.0, rel_tol: 1e-12, max_intervals: 20_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<const K: usize> {
    pub value: [f64; K],
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Piece<const K: usize> {
    lo: f64,
    hi: f64,
    value: [f64; K],
    error: f64,
}

impl<const K: usize> PartialEq for Piece<K> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<const K: usize> Eq for Piece<K> {}

impl<const K: usize> PartialOrd for Piece<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const K: usize> Ord for Piece<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn kronrod21<const K: usize, F>(f: &mut F, lo: f64, hi: f64) -> Result<Piece<K>>
where
    F: FnMut(f64) -> Result<[f64; K]>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center)?;
    let mut kronrod = [0.0; K];
    let mut gauss = [0.0; K];
    for k in 0..K {
        kronrod[k] = WGK[10] * f_center[k];
    }
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(10).enumerate() {
        let dx = half * x;
        let left = f(center - dx)?;
        let right = f(center + dx)?;
        for k in 0..K {
            let sum = left[k] + right[k];
            kronrod[k] += w * sum;
            if j % 2 == 1 {
                gauss[k] += WG[j / 2] * sum;
            }
        }
    }
    let mut error = 0.0f64;
    let mut value = [0.0; K];
    for k in 0..K {
        value[k] = kronrod[k] * half;
        error = error.max(((kronrod[k] - gauss[k]) * half).abs());
    }
    Ok(Piece { lo, hi, value, error })
}

/// Integrates `f` over `[points[0], points[last]]`, with `points` as the initial
/// partition. Points must be sorted; repeated points are skipped.
pub fn integrate<const K: usize, F>(
    mut f: F,
    points: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Estimate<K>>
where
    F: FnMut(f64) -> Result<[f64; K]>,
{
    let mut heap = BinaryHeap::new();
    let mut done: Vec<Piece<K>> = Vec::new();
    let mut evaluations = 0usize;
    for pair in points.windows(2) {
        if pair[1] > pair[0] {
            heap.push(kronrod21(&mut f, pair[0], pair[1])?);
            evaluations += 21;
        }
    }

    let tolerance = |pieces: &mut dyn Iterator<Item = &Piece<K>>| {
        let mut total = [0.0; K];
        let mut error = 0.0;
        for p in pieces {
            for (t, v) in total.iter_mut().zip(&p.value) {
                *t += v;
            }
            error += p.error;
        }
        let scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        (error, cfg.abs_tol.max(cfg.rel_tol * scale))
    };

    loop {
        let (error, tol) = tolerance(&mut heap.iter().chain(done.iter()));
        if error <= tol {
            break;
        }
        if heap.len() + done.len() >= cfg.max_intervals {
            return Err(Error::QuadratureNotConverged { estimate: error, tolerance: tol });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::QuadratureNotConverged { estimate: error, tolerance: tol });
        };
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) || worst.hi - worst.lo <= 1e-13 * mid.abs() {
            done.push(worst);
            continue;
        }
        heap.push(kronrod21(&mut f, worst.lo, mid)?);
        heap.push(kronrod21(&mut f, mid, worst.hi)?);
        evaluations += 42;
    }

    let mut pieces: Vec<Piece<K>> = heap.into_vec();
    pieces.extend(done);
    pieces.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut value = [0.0; K];
    let mut error = 0.0;
    for p in &pieces {
        for (t, v) in value.iter_mut().zip(&p.value) {
            *t += v;
        }
        error += p.error;
    }
    Ok(Estimate { value, error, evaluations })
}

/// ∫_W^∞ f(ω) dω via ω = W/t, for integrands decaying at least like 1/ω².
pub fn integrate_tail<const K: usize, F>(
    mut f: F,
    start: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate<K>>
where
    F: FnMut(f64) -> Result<[f64; K]>,
{
    integrate(
        |t: f64| {
            let omega = start / t;
            let mut v = f(omega)?;
            let jac = start / (t * t);
            for x in v.iter_mut() {
                *x *= jac;
            }
            Ok(v)
        },
        &[0.0, 1.0],
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn cfg(rel_tol: f64) -> QuadratureConfig {
        QuadratureConfig { abs_tol: 0.0, rel_tol, max_intervals: 5000 }
    }

    #[test]
    fn polynomial_exact_on_one_panel() {
        let est = integrate(|x: f64| Ok([x.powi(9), 1.0]), &[0.0, 2.0], &cfg(1e-14)).unwrap();
        assert_relative_eq!(est.value[0], 102.4, max_relative = 1e-14);
        assert_relative_eq!(est.value[1], 2.0, max_relative = 1e-14);
        assert_eq!(est.evaluations, 21);
    }

    #[test]
    fn narrow_lorentzian_with_breakpoint() {
        let w = 1e-4;
        let f = |x: f64| Ok([w / (w * w + (x - 3.0) * (x - 3.0))]);
        let est = integrate(f, &[0.0, 3.0, 10.0], &cfg(1e-12)).unwrap();
        let exact = (7.0 / w).atan() + (3.0 / w).atan();
        assert_relative_eq!(est.value[0], exact, max_relative = 1e-11);
    }

    #[test]
    fn lorentzian_tail() {
        let est = integrate_tail(|x: f64| Ok([1.0 / (1.0 + x * x)]), 5.0, &cfg(1e-13)).unwrap();
        assert_relative_eq!(est.value[0], PI / 2.0 - 5.0f64.atan(), max_relative = 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let tight = QuadratureConfig { abs_tol: 0.0, rel_tol: 1e-15, max_intervals: 4 };
        let err = integrate(|x: f64| Ok([(1.0 / (x + 1e-9)).sin()]), &[0.0, 1.0], &tight);
        assert!(matches!(err, Err(Error::QuadratureNotConverged { .. })));
    }

    #[test]
    fn propagates_integrand_errors() {
        let err = integrate(
            |_x: f64| -> Result<[f64; 1]> { Err(Error::Singular { what: "test" }) },
            &[0.0, 1.0],
            &cfg(1e-8),
        );
        assert!(matches!(err, Err(Error::Singular { .. })));
    }
}
