use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial has no terms")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("t must satisfy t >= 1, got {0}")]
    BadT(f64),
    #[error("cone is not proper: {0}")]
    ImproperCone(String),
    #[error("degenerate cone: {0}")]
    DegenerateCone(String),
    #[error("point is not in the set")]
    PointNotInSet,
    #[error("zero set not supported: {0}")]
    UnsupportedZeroSet(String),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("point is not on the boundary of the domain")]
    NotOnBoundary,
    #[error("point is not in the open domain")]
    OutsideDomain,
    #[error("segment is not contained in the domain")]
    SegmentNotInDomain,
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
