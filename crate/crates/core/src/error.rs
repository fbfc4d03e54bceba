//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("frame is rank deficient: smallest singular value {smallest:e} <= {threshold:e}")]
    RankDeficient { smallest: f64, threshold: f64 },

    #[error("frame is not orthonormal: residual {residual:e} > {threshold:e}")]
    NotOrthonormal { residual: f64, threshold: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("point lies outside the chart domain: smallest singular value of the base block {smallest:e}")]
    OutsideChartDomain { smallest: f64 },

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("sampler exhausted: {0}")]
    SamplerExhausted(String),

    #[error("typing mismatch: {0}")]
    TypingMismatch(String),

    #[error("inconsistent samples: {0}")]
    InconsistentSamples(String),

    #[error("cocycle violation: {0}")]
    CocycleViolation(String),

    #[error("expected rank 1, found rank {0}")]
    NotRankOne(usize),

    #[error("expected a two-arc circle cover, found {0}")]
    NotCircle(String),

    #[error("expected a two-disk sphere cover, found {0}")]
    NotSphere(String),

    #[error("wrong scalar field: expected {expected}")]
    FieldMismatch { expected: &'static str },

    #[error("loop is undersampled: {0}")]
    UndersampledLoop(String),

    #[error("transition changes sign inside a connected overlap: {0}")]
    Discontinuity(String),

    #[error("section mismatch: {0}")]
    SectionMismatch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
