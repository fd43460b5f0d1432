use thiserror::Error;

/// Errors raised by fan construction and the operations on fans.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("ray {index} has {found} coordinates, expected {expected}")]
    RayDimension { index: usize, expected: usize, found: usize },
    #[error("ray {coords:?} is not a primitive lattice vector")]
    NonPrimitiveRay { coords: Vec<i64> },
    #[error("rays {first} and {second} are equal")]
    DuplicateRay { first: usize, second: usize },
    #[error("ray index {index} out of range ({ray_count} rays)")]
    RayIndexOutOfRange { index: usize, ray_count: usize },
    #[error("cone {cone:?} must list exactly {expected} distinct rays")]
    ConeSize { cone: Vec<usize>, expected: usize },
    #[error("cone {cone:?} is listed twice")]
    DuplicateCone { cone: Vec<usize> },
    #[error("cone {cone:?} is not simplicial: its rays are linearly dependent")]
    DependentCone { cone: Vec<usize> },
    #[error("ray {index} lies in no maximal cone")]
    UnusedRay { index: usize },
    #[error("cones {first:?} and {second:?} do not meet in a common face")]
    Overlap { first: Vec<usize>, second: Vec<usize> },
    #[error("the fan is not complete")]
    NotComplete,
    #[error("the fan is not smooth")]
    NotSmooth,
    #[error("facet {wall:?} lies in only one maximal cone")]
    UnmatchedWall { wall: Vec<usize> },
    #[error("{wall:?} is not a wall of the fan")]
    UnknownWall { wall: Vec<usize> },
    #[error("operation supports dimension 3 only, fan has dimension {dim}")]
    UnsupportedDimension { dim: usize },
    #[error("{rays:?} is not a primitive collection")]
    NotPrimitiveCollection { rays: Vec<usize> },
    #[error("no cone contains the sum of {rays:?} in its relative interior")]
    NoInteriorCone { rays: Vec<usize> },
    #[error("primitive relation of {rays:?} has non-integral coefficients")]
    NonIntegralRelation { rays: Vec<usize> },
    #[error("ray {coords:?} is already a ray of the fan")]
    RayExists { coords: Vec<i64> },
    #[error("vector {coords:?} lies outside the support of the fan")]
    OnBoundaryOfNoCone { coords: Vec<i64> },
    #[error("star of ray {ray} is neither a contractible triangle nor a 4-cycle over an edge")]
    UnsupportedStarPattern { ray: usize },
    #[error("wall {wall:?} admits no small exchange")]
    NotModifiableWall { wall: Vec<usize> },
    #[error("surgery produced an invalid fan: {0}")]
    ResultInvalid(Box<FanError>),
    #[error("input rays are degenerate: {0}")]
    RaysDegenerate(String),
}
