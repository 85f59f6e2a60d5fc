use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{field}` = {value}: {reason}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("drift matrix is not stable (max real part of eigenvalues = {max_real_part:e})")]
    Unstable { max_real_part: f64 },

    #[error("singular linear system while solving for {what}")]
    Singular { what: &'static str },

    #[error("quadrature did not converge: error estimate {estimate:e} above tolerance {tolerance:e}")]
    QuadratureNotConverged { estimate: f64, tolerance: f64 },

    #[error("unknown sweep axis `{0}`")]
    UnknownAxis(String),

    #[error("readout window violates the Fourier limit: a*b = {product} < 2*pi")]
    FourierLimit { product: f64 },
}
