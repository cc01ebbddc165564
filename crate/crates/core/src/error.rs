use thiserror::Error;

use crate::ordered::LexGroupElement;
use crate::pointset::PointSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the universe of a ball space must be nonempty")]
    EmptyUniverse,
    #[error("universe of {n} points exceeds the supported {max} points")]
    UniverseTooLarge { n: usize, max: usize },
    #[error("a ball space needs at least one ball")]
    EmptyFamily,
    #[error("balls must be nonempty")]
    EmptyBall,
    #[error("point {point} is outside the universe 0..{n}")]
    OutOfRangePoint { point: usize, n: usize },
    #[error("{set} is not a ball of the space")]
    NotASubfamily { set: PointSet },
    #[error("the family is empty")]
    EmptySubfamily,
    #[error("the family is not a centered system")]
    NotCentered,
    #[error("the centered system is not maximal: {ball} can be added")]
    NotMaximal { ball: PointSet },
    #[error("the family is not totally ordered by inclusion")]
    NotANest,
    #[error("{what}: size {size} exceeds the enumeration bound {bound}")]
    EnumerationBoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("universes differ: {left} vs {right} points")]
    UniverseMismatch { left: usize, right: usize },
    #[error("spaces do not match: {0}")]
    SpaceMismatch(String),
    #[error("map table has {found} entries, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("map sends {point} to {value}, outside the codomain 0..{size}")]
    TableOutOfRange { point: usize, value: usize, size: usize },
    #[error("map is not surjective: {missing} has no preimage")]
    NotSurjective { missing: usize },
    #[error("ball {ball} is not a union of fibres")]
    BallNotSaturated { ball: PointSet },
    #[error("map is not ball continuous: preimage of {ball} is not a ball")]
    NotContinuous { ball: PointSet },
    #[error("map is not ball closed: image of {ball} is not a ball")]
    NotClosed { ball: PointSet },
    #[error("construction of size {size} exceeds the bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("the index set must be nonempty")]
    EmptyIndexSet,
    #[error("map {index} of the cone is not ball continuous")]
    ConeNotContinuous { index: usize },
    #[error("augmented family is missing the empty set")]
    MissingEmptySet,
    #[error("augmented family is missing the full universe")]
    MissingFullSet,
    #[error("interval lower end exceeds its upper end")]
    InvalidInterval,
    #[error("union is not convex; {witness} lies strictly between components and outside the union")]
    NotConvex { witness: LexGroupElement },
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
