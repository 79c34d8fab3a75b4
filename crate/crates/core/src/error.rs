use thiserror::Error;

use crate::trig::TorusPoint;

#[derive(Debug, Error)]
pub enum Error {
    #[error("frequency aliasing: {nodes} nodes per axis cannot resolve frequency {frequency} (need at least {required})")]
    Aliasing {
        nodes: usize,
        frequency: u32,
        required: usize,
    },

    #[error("frequency aliasing: grid {n1}x{n2} cannot resolve max frequency {max_freq} (need more than {} nodes per axis)", 2 * max_freq)]
    GridTooSmall { n1: usize, n2: usize, max_freq: u32 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("not enough two-dimensional modes: need {needed}, table has {available}")]
    NotEnoughModes { needed: usize, available: usize },

    #[error("mode {0} must have both frequencies >= 1")]
    NotTwoDimensional(String),

    #[error("mode {0} must have a zero frequency on at least one axis")]
    NotSingleAxis(String),

    #[error("degenerate sign evaluation: {0}")]
    DegenerateSign(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "newton iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },

    #[error(
        "iterate left the trust region of radius {radius} around the seed (distance {distance})"
    )]
    LeftBasin { radius: f64, distance: f64 },

    #[error("nash hessian is singular at {point} (|det| = {det:e})")]
    SingularHessian { point: TorusPoint, det: f64 },

    #[error("{point} is not a critical point (|nash field| = {residual:e})")]
    NotCritical { point: TorusPoint, residual: f64 },

    #[error("centers persist up to truncation level {max_s}")]
    Exhausted { max_s: usize },

    #[error("non-finite field value at {0}")]
    NonFinite(TorusPoint),

    #[error("singular point for the separable invariant at {0}")]
    SingularInvariant(TorusPoint),

    #[error("generator quantile undefined at lambda = {0}")]
    QuantileDomain(f64),

    #[error("non-finite cost integrand at theta = ({theta1}, {theta2}), x = {x}")]
    CostDiagnostic { theta1: f64, theta2: f64, x: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
