//! Squeezing transfer between a broadband squeezed vacuum and the collective
//! ground-state spin of Λ-atoms in a one-port cavity.
//!
//! [`langevin`] builds the linearized fluctuation model, [`spectra`] solves it
//! for the steady spin covariance by two independent routes, [`analytic`]
//! holds the closed-form efficiencies used as oracles and fast paths, and
//! [`readout`] models homodyne retrieval. Rates are in units of γ unless a
//! function says otherwise.

pub mod analytic;
pub mod error;
pub mod langevin;
pub mod optimize;
pub mod params;
pub mod quadrature;
pub mod readout;
pub mod spectra;

pub use error::{Error, Result};
pub use langevin::{build_model, output_field_map, LinearModel, OutputFieldMap};
pub use params::{derive, from_dimensionless, DerivedParams, Dimensionless, SystemParams};
pub use quadrature::QuadratureConfig;
pub use spectra::{covariance_by_integration, covariance_by_lyapunov, CovarianceReport};
