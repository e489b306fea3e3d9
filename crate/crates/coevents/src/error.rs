use crate::algebra::Event;
use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("history space must contain at least one history")]
    EmptySpace,

    #[error("history labels must be nonempty")]
    EmptyLabel,

    #[error("duplicate history label `{0}`")]
    DuplicateLabel(String),

    #[error("space of {size} histories exceeds the cap of {cap}")]
    OverCap { size: usize, cap: usize },

    #[error("unknown history label `{0}`")]
    UnknownLabel(String),

    #[error("event mask {mask:#x} has bits outside a space of {size} histories")]
    InvalidEventBits { mask: u32, size: usize },

    #[error("operands belong to different history spaces")]
    MixedSpaces,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("rational denominator must be nonzero")]
    ZeroDenominator,

    #[error("cannot parse `{0}` as a rational number")]
    BadRational(String),

    #[error("measure has {got} entries but the space has {expected} histories")]
    ArityMismatch { expected: usize, got: usize },

    #[error("measure mixes exact-rational and floating-point values")]
    MixedNumericModes,

    #[error("preclusion tolerance must be a finite nonnegative number, got {0}")]
    InvalidEpsilon(f64),

    #[error("measure is not weakly positive: mu({0}) < 0")]
    NotWeaklyPositive(Event),

    #[error("coevent support must be nonempty")]
    EmptySupport,

    #[error("coevent is not preclusive; primitivity is undefined for it")]
    NotPreclusive,

    #[error("the whole history space is precluded; no preclusive coevent exists")]
    TotalPreclusion,

    #[error("space of {size} histories exceeds the brute-force oracle cap of {cap}")]
    OracleCap { size: usize, cap: usize },

    #[error("space of {size} histories exceeds the exhaustive-check cap of {cap}")]
    ExhaustiveCap { size: usize, cap: usize },

    #[error("enumeration disagrees with the brute-force oracle; this is a bug")]
    OracleMismatch,

    #[error("scenario: {0}")]
    Scenario(String),

    #[error("proof: {0}")]
    Proof(String),

    #[error("step {step} cites judgment {cited}, which does not precede it")]
    DanglingCitation { step: usize, cited: usize },

    #[error("premise inconsistent with the null structure: {0}")]
    PremiseInconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
