use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("modular-inverse phase convention requires odd d, got d = {0}")]
    InvalidConvention(usize),

    #[error("displacement loop does not close: net label ({x}, {p}) mod {d}")]
    OpenLoop { x: i64, p: i64, d: usize },

    #[error("qudit dimension {d} too small for {n} controls (need d > n)")]
    DimensionTooSmall { d: usize, n: usize },

    #[error("loop cannot be closed for eta = {0} (need |eta| <= sqrt(2) - 1)")]
    LoopUnclosable(f64),

    #[error("singular spin composition: displacement reaches the south pole")]
    SingularComposition,

    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
