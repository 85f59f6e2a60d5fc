//! One-dimensional bracketed maximization.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub argmax: f64,
    pub value: f64,
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`,
/// stopping when the bracket is narrower than `rel_tol·|x| + abs_tol`.
pub fn golden_max<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
    abs_tol: f64,
) -> Maximum {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..500 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= rel_tol * mid.abs() + abs_tol {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        Maximum { argmax: x1, value: f1 }
    } else {
        Maximum { argmax: x2, value: f2 }
    }
}

/// Scans `n` equispaced points on `[lo, hi]`, then refines around the best
/// one with [`golden_max`].
pub fn scan_then_golden<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    n: usize,
    rel_tol: f64,
    abs_tol: f64,
) -> Maximum {
    assert!(n >= 3, "scan needs at least three points");
    let step = (hi - lo) / (n - 1) as f64;
    let (best, _) = (0..n)
        .map(|i| (i, f(lo + step * i as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    let a = lo + step * best.saturating_sub(1) as f64;
    let b = lo + step * (best + 1).min(n - 1) as f64;
    golden_max(f, a, b, rel_tol, abs_tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let m = golden_max(|x| -(x - 1.3) * (x - 1.3) + 2.0, 0.0, 5.0, 1e-10, 0.0);
        assert!((m.argmax - 1.3).abs() < 1e-7);
        assert!((m.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn scan_picks_global_peak() {
        // two bumps, the larger at x = 7
        let f = |x: f64| (-(x - 2.0).powi(2)).exp() + 2.0 * (-(x - 7.0).powi(2)).exp();
        let m = scan_then_golden(f, 0.0, 10.0, 41, 1e-10, 0.0);
        assert!((m.argmax - 7.0).abs() < 1e-6);
    }

    #[test]
    fn boundary_maximum() {
        let m = scan_then_golden(|x| -x, 0.0, 1.0, 11, 1e-12, 1e-12);
        assert!(m.argmax < 1e-9);
    }
}
