use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ray {index} is not primitive: {ray}")]
    NonPrimitiveRay { index: usize, ray: String },

    #[error("cone {cone:?} is not smooth (ray determinant {det} != ±1)")]
    NotSmooth { cone: Vec<usize>, det: String },

    #[error("fan is not complete: {0}")]
    NotComplete(String),

    #[error("bad face structure: {0}")]
    BadFaceStructure(String),

    #[error("weight region too large: {points} lattice points exceeds cap {cap}")]
    RegionOverflow { points: u128, cap: u128 },

    #[error("coefficient out of machine range: {0}")]
    CoefficientOverflow(String),

    #[error("unsupported twist: {0}")]
    UnsupportedTwist(String),

    #[error("unsupported characteristic {0} for this backend")]
    UnsupportedCharacteristic(u64),

    #[error("search bound exceeded: no answer within {what} <= {bound}")]
    SearchBoundExceeded { what: String, bound: i64 },

    #[error("polarization is not ample: {0}")]
    NotAmple(String),

    #[error("ring window too small: need degree {needed}, ring truncated at {have}")]
    WindowTooSmall { needed: usize, have: usize },

    #[error("size cap exceeded: {0}")]
    SizeCapExceeded(String),

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("operation requires Picard rank {needed}, geometry has rank {have}")]
    UnsupportedRank { needed: usize, have: usize },

    #[error("vanishing hypothesis fails: {0}")]
    HypothesisFails(String),

    #[error("graded ring is not generated in degree one (first gap in degree {degree})")]
    NotDegreeOneGenerated { degree: usize },

    #[error("algebra basis does not contain the unit / augmentation ideal: {0}")]
    NotAugmented(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("bad input: {0}")]
    Usage(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
