use thiserror::Error;

/// Errors raised by the group, walk, boundary and strip machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base element variant mismatch: {0}")]
    VariantMismatch(String),

    #[error("lamp modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u8, right: u8 },

    #[error("ball radius {requested} exceeds the enumeration cap {cap}")]
    BallCapExceeded { requested: u32, cap: u32 },

    #[error("{sites} tour sites exceed the exact travelling-salesman cap {cap}")]
    TspCapExceeded { sites: usize, cap: usize },

    #[error("breadth-first search exhausted radius {radius} without reaching the target")]
    BfsRadiusExhausted { radius: u32 },

    #[error("division by zero distance: x is the identity")]
    ZeroDistance,

    #[error("walk ended at the origin, no direction is defined")]
    NoDirection,

    #[error("stable prefix has length {have}, at least {need} letters are required")]
    PrefixTooShort { have: usize, need: usize },

    #[error("trajectory of {steps} steps is shorter than twice the tail window {window}")]
    TrajectoryTooShort { steps: u64, window: u64 },

    #[error("boundary points coincide; the strip is only defined for distinct ends")]
    IdenticalEnds,

    #[error("{0} is not on the strip")]
    NotOnStrip(String),

    #[error("partition scheme does not apply: {0}")]
    SchemeMismatch(String),

    #[error("invalid step measure: {0}")]
    InvalidMeasure(String),

    #[error("cylinder algebra is not closed at depth {available}; depth {required} is needed")]
    CylinderDepth { available: usize, required: usize },

    #[error("invalid boundary point: {0}")]
    InvalidBoundaryPoint(String),

    #[error("an exact end is required, got a finite-precision estimate")]
    InexactEnd,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
