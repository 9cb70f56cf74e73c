use thiserror::Error;

/// Errors shared across the exact-arithmetic and construction layers.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("element references radicand level {level} but the tower has only {tower_len} radicands")]
    TowerMismatch { level: usize, tower_len: usize },

    #[error("radicand must be strictly positive (only real towers are supported)")]
    NonPositiveRadicand,

    #[error("coefficient bit length {bits} exceeds the configured cap of {cap} bits")]
    BitCapExceeded { bits: u64, cap: u64 },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("point rejected: x must satisfy x > 0 on the half-parabola, got {value}")]
    NonPositivePoint { value: String },

    #[error("coincident points (distance would be zero)")]
    CoincidentPoints,

    #[error("duplicate coordinates at indices {i} and {j}")]
    DuplicatePoints { i: usize, j: usize },

    #[error("rationality condition violated: p*t + q*r must be 0, got {value}")]
    RationalityCondition { value: String },

    #[error("factor r + t*sqrt(R) must be >= 1, got {value}")]
    FactorBelowOne { value: String },

    #[error("zero separation: |p + q*sqrt(R)| must be positive")]
    ZeroSeparation,

    #[error("radicand {value} is a perfect square; a nonsquare radicand is required")]
    SquareRadicand { value: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("empty grid: at least one realized cell is required")]
    EmptyGrid,

    #[error("cross-check mismatch for pair ({x1}, {x2}): tower verdict rational={tower_rational}, criterion rational={criterion_rational}")]
    CrosscheckMismatch {
        x1: String,
        x2: String,
        tower_rational: bool,
        criterion_rational: bool,
    },

    #[error("sign determination failed to converge (internal invariant violated)")]
    SignUndetermined,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
