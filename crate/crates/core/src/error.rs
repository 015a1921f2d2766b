use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty set")]
    EmptySet,
    #[error("not normalized")]
    NotNormalized,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("mismatched grids")]
    GridMismatch,
    #[error("no boundary")]
    NoBoundary,
    #[error("feature under-resolved: resolution {resolution} exceeds thinnest feature {feature}")]
    FeatureUnderResolved { resolution: f64, feature: f64 },
    #[error("empty slice")]
    EmptySlice,
    #[error("degenerate slab")]
    DegenerateSlab,
    #[error("cannot orient normal: {0}")]
    CannotOrientNormal(String),
    #[error("scale out of range: {0}")]
    ScaleOutOfRange(String),
    #[error("under-resolved: {0}")]
    UnderResolved(String),
    #[error("beyond Jones radius: d(x,y) = {dist} exceeds {max}")]
    BeyondJonesRadius { dist: f64, max: f64 },
    #[error("identical endpoints")]
    IdenticalEndpoints,
    #[error("endpoint mismatch")]
    EndpointMismatch,
    #[error("unbounded at this clip")]
    UnboundedAtClip,
    #[error("rejection sampling failed after {0} draws")]
    SamplingFailed(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
