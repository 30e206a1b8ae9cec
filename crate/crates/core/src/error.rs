use thiserror::Error;

use crate::geom::LatticePoint;
use crate::semigroup::RaySide;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("direction ({0}, {1}) leaves the first quadrant")]
    NegativeDirection(i64, i64),

    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("degenerate line: both coefficients vanish")]
    DegenerateLine,

    #[error("region is unbounded")]
    UnboundedRegion,

    #[error("semigroup is not simplicial: body and origin are collinear")]
    NotSimplicial,

    #[error("circle tangent rays are irrational (|center|^2 - r^2 is not a rational square)")]
    IrrationalRays,

    #[error("no generator found on ray {side} within {bound} multiples of the primitive direction")]
    GeneratorNotFound { side: RaySide, bound: u64 },

    #[error("ray {0} meets the body in a segment; the escape construction needs a single contact vertex")]
    SegmentContact(RaySide),

    #[error("escape index search on ray {side} exceeded {cap}")]
    StructureSearchOverflow { side: RaySide, cap: u64 },

    #[error("escape line of ray {0} is parallel to the opposite ray")]
    NuTauParallel(RaySide),

    #[error("escape lines are parallel; apex undefined")]
    ApexParallel,

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("Apéry description requires a Cohen-Macaulay semigroup")]
    PreconditionNotCm,

    #[error("{0} is not an element of the semigroup")]
    NotAMember(LatticePoint),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("gap scan stopped at dilation {bound} before the proven bound {needed}")]
    BoundExhausted { bound: u64, needed: u64 },
}

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed input: bad literals, non-convex polygons, bad arguments.
    Input,
    /// Input parsed but violates a precondition of the theory.
    Precondition,
    /// A bounded search ended without a definite answer.
    Inconclusive,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ZeroVector
            | Error::NegativeDirection(..)
            | Error::ParseRational(_)
            | Error::InvalidBody(_)
            | Error::DegenerateLine
            | Error::UnboundedRegion
            | Error::InvalidArgument(_) => ErrorClass::Input,
            Error::BoundExhausted { .. } => ErrorClass::Inconclusive,
            _ => ErrorClass::Precondition,
        }
    }
}
