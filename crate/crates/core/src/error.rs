use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("argument `{0}` is not finite")]
    NonFinite(&'static str),

    #[error("pole at {0}: coefficient is singular there")]
    Pole(&'static str),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid configuration: {0}")]
    Configuration(String),

    #[error("invalid radial grid: {0}")]
    Grid(String),

    #[error("grid too coarse: residual {residual:.3e} falls to {refined:.3e} when h is halved")]
    GridTooCoarse { residual: f64, refined: f64 },

    #[error("node count ambiguous near rho = {rho:.6}; refine the grid")]
    NodeAmbiguity { rho: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("eigensolver: {0}")]
    Solver(String),

    #[error("sampling: {0}")]
    Sampling(String),
}

pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        field,
        reason: reason.into(),
    }
}

pub(crate) fn finite(name: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(name))
    }
}
