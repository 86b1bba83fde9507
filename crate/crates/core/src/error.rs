use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic {0} is too small, need p > 5")]
    CharTooSmall(u64),
    #[error("prime {0} exceeds 2^31")]
    PrimeTooLarge(u64),
    #[error("extension degree {k} over F_{p} is too large")]
    ExtensionTooLarge { p: u64, k: usize },
    #[error("invalid field spec `{0}`")]
    BadFieldSpec(String),
    #[error("random sampling is only defined over finite fields")]
    RationalSamplingUnsupported,
    #[error("operation requires a finite field")]
    FiniteFieldRequired,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("expected a form of degree {expected}, found degree {found}")]
    WrongDegree { expected: u32, found: u32 },
    #[error("linear form does not divide the polynomial")]
    NotDivisible,
    #[error("the two parameter points coincide")]
    DegeneratePair,
    #[error("plane basis points are not independent")]
    DegenerateBasis,
    #[error("plane does not contain the line or is degenerate")]
    DegeneratePlane,
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("points are identical")]
    IdenticalPoints,
    #[error("enumeration of {points} points exceeds the guard of {limit}")]
    EnumerationTooLarge { points: u128, limit: u128 },
    #[error("point is not a singular point of the surface")]
    NotSingular,
    #[error("node test requires characteristic other than 2, 3, 5 (got {0})")]
    BadCharacteristic(u64),
    #[error("k must be 1 or 2 for the position check, got {0}")]
    KOutOfRange(usize),
    #[error("fewer than {needed} smooth points of the surface on the line (found {found})")]
    InsufficientSmoothPoints { needed: usize, found: usize },
    #[error("sample point lies on the base line")]
    PointOnLine,
    #[error("residual point on the base line is a singular point of the surface")]
    NoSmoothResidualPoint,
    #[error("surface has {0} singular points that are not nodes")]
    NonNodalSurface(usize),
    #[error("square root of 5 does not exist in this field")]
    SqrtUnavailable,
    #[error("fixture requires characteristic {expected}")]
    WrongCharacteristic { expected: u64 },
    #[error("no nodal member found after {attempts} attempts")]
    NoNodalMember { attempts: u32 },
    #[error("at most {max} prescribed points are supported, got {got}")]
    TooManyPoints { max: usize, got: usize },
    #[error("prescribed points must be pairwise distinct")]
    DuplicatePoints,
    #[error("no suitable prime found below {0}")]
    NoSuitablePrime(u64),
    #[error("unknown gallery entry `{0}`")]
    BadGallerySpec(String),
}
