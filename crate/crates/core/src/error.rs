use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order mismatch: a{left} form vs a{right} form")]
    OrderMismatch { left: usize, right: usize },

    #[error("expected {expected} coefficient values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("polynomial is not isobaric")]
    NotIsobaric,

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("transform is singular (determinant 0)")]
    SingularTransform,

    #[error("scale factors must be nonzero")]
    ZeroScale,

    #[error("invalid discovery request: {0}")]
    InvalidRequest(String),
}
