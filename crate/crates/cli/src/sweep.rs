use anyhow::{bail, Result};

use eit_memory::spectra::{efficiency_sweep, Method, SweepOptions};

use crate::config::Scenario;
use crate::table::{Cell, Table};

/// One table for every scenario that declares a sweep, rows in grid order.
pub fn run_sweeps(scenarios: &[Scenario], method: Method) -> Result<Table> {
    let swept: Vec<&Scenario> = scenarios.iter().filter(|s| s.sweep.is_some()).collect();
    if swept.is_empty() {
        bail!("no scenario defines a [<name>.sweep] table");
    }
    let mut t = Table::new(
        "sweep",
        &["scenario", "axis", "value", "eta", "eta_closed_form", "theta_sq", "min_variance", "status"],
    );
    t.comment(format!("method: {}", if matches!(method, Method::Lyapunov) { "lyapunov" } else { "integration" }));
    for s in &swept {
        let spec = s.sweep.expect("filtered above");
        t.echo_params(&format!("{} (mode {}, track_optimal_conditions {})", s.name, s.mode, s.track_optimal_conditions), &s.params);
        let values = spec.values()?;
        let options = SweepOptions { method, track_optimal: s.track_optimal_conditions };
        for row in efficiency_sweep(&s.params, spec.axis, &values, options) {
            let closed = s.closed_form(&row.point).unwrap_or(f64::NAN);
            let (eta, theta, min_var, status): (f64, f64, f64, Cell) = match &row.outcome {
                Ok(rep) => (rep.efficiency.unwrap_or(f64::NAN), rep.squeezed_angle, rep.min_variance, "ok".into()),
                Err(eit_memory::Error::Unstable { .. }) => (f64::NAN, f64::NAN, f64::NAN, "unstable".into()),
                Err(_) => (f64::NAN, f64::NAN, f64::NAN, "error".into()),
            };
            t.push(vec![
                s.name.as_str().into(),
                spec.axis.name().into(),
                row.value.into(),
                eta.into(),
                closed.into(),
                theta.into(),
                min_var.into(),
                status,
            ]);
        }
    }
    Ok(t)
}
