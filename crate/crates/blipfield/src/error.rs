use thiserror::Error;

/// Errors produced by grid construction, packet construction and the
/// physics operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid size {n} must be a power of two and at least 4")]
    InvalidGridSize { n: usize },

    #[error("{what} must be positive and finite, got {value}")]
    NonPositive { what: &'static str, value: f64 },

    #[error("packet width sigma = {sigma} is unresolvable on a grid with dx = {dx}")]
    SigmaUnresolvable { sigma: f64, dx: f64 },

    #[error("packet support [{lo}, {hi}] is too close to the periodic boundary")]
    TouchesBoundary { lo: f64, hi: f64 },

    #[error("wavepacket is not effectively localized on this grid")]
    NotLocalized,

    #[error("real-space regularization kernel is singular at coincidence (delta = 0)")]
    CoincidenceSingularity,

    #[error("regulator epsilon = {eps} is invalid: {why}")]
    InvalidRegulator { eps: f64, why: &'static str },

    #[error("position x = {x} lies outside the cavity (-{half}, {half})")]
    OutsideCavity { x: f64, half: f64 },

    #[error("conditional click probability is undefined: the coherent prefactor vanishes at alpha = 0")]
    UndefinedConditional,

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("{0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
