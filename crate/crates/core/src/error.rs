use thiserror::Error;

/// Errors produced by series algebra, operator application, and norm estimation.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must share an ambient dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A multi-index has total order beyond the degree cap of the series.
    #[error("multi-index order {order} exceeds degree cap {cap}")]
    OrderExceedsCap { order: u32, cap: u32 },

    /// A point that must lie in the open unit ball does not.
    #[error("point outside the open unit ball: |z| = {norm}")]
    OutsideBall { norm: f64 },

    /// An anchor direction that must lie in the closed unit ball does not.
    #[error("anchor outside the closed unit ball: |a| = {norm}")]
    AnchorOutsideBall { norm: f64 },

    /// Radial antidifferentiation requires a vanishing constant term.
    #[error("radial antiderivative undefined: constant term has magnitude {magnitude}")]
    NonzeroConstantTerm { magnitude: f64 },

    /// A sampled objective produced NaN or infinity.
    #[error("non-finite sample while {context}")]
    NonFiniteSample { context: &'static str },

    /// A radius parameter fell outside its admissible interval.
    #[error("radius {radius} outside admissible range [{lo}, {hi})")]
    RadiusOutOfRange { radius: f64, lo: f64, hi: f64 },

    /// An experiment was handed an empty function family.
    #[error("function family is empty")]
    EmptyFamily,

    /// A sampler or harness configuration is unusable.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A function or operator specification could not be parsed.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
