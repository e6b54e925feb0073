use thiserror::Error;

/// Errors raised by constructors and geometric queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate plane: normal has norm {0:e}")]
    DegeneratePlane(f64),
    #[error("degenerate polynomial: all coefficients are zero")]
    DegeneratePolynomial,
    #[error("invalid duration {0}: must be finite and positive")]
    InvalidDuration(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("query point lies inside the obstacle")]
    PointInside,
    #[error("query point is within {0:e} m of the obstacle boundary; normal is undefined")]
    DegenerateNormal(f64),
    #[error("invalid obstacle: {0}")]
    InvalidObstacle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
