use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u32, right: u32 },

    #[error("level must be at least 1")]
    ZeroLevel,

    #[error("enumeration of level {n} refused: cap is {cap}, it would produce {count} elements")]
    EnumerationCap { n: u32, cap: u32, count: String },

    #[error("exhaustive computation at level {n} refused: cap is {cap}")]
    ExhaustiveCap { n: u32, cap: u32 },

    #[error("exact sampling at level {n} refused: cap is {cap} (enable approximate sampling to go further)")]
    SamplingCap { n: u32, cap: u32 },

    #[error("dense eigen oracle limited to level {max}, got {n}")]
    OracleTooLarge { n: u32, max: u32 },

    #[error("dense eigensolver did not converge at level {n}")]
    OracleNoConvergence { n: u32 },

    #[error("leaf index {index} out of range 1..={max}")]
    LeafOutOfRange { index: u64, max: u64 },

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
