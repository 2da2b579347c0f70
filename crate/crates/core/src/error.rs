use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree must be a positive integer, got {0}")]
    InvalidDegree(i64),

    #[error("jet order {0} exceeds the supported maximum of {max}", max = crate::jet::MAX_ORDER)]
    JetOrder(usize),

    #[error("degenerate induced metric: det g = {0:e}")]
    DegenerateMetric(f64),

    #[error("quadrature size must be at least 2, got {0}")]
    QuadratureSize(usize),

    #[error("value {value} lies outside the admissible range [5/3, 9/5]")]
    GapDomain { value: f64 },

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("sample count must be at least 1")]
    NoSamples,

    #[error("ambient polynomial has {got} variables but the immersion has {expected}")]
    AmbientDimension { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
