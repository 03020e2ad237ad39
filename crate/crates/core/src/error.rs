use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("factorisation degree cap exceeded: degree {degree} > cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A computation would exceed its resource guard. `lower_bound` carries
    /// whatever partial result was established before giving up.
    #[error("resource cap exceeded: {what} (partial lower bound: {lower_bound})")]
    ResourceCap { what: String, lower_bound: u32 },

    #[error("unknown reference: {0}")]
    UnknownReference(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("curve {curve} has no Alexander-module class; supply `alex_class` in decomposition coordinates")]
    MissingAlexClass { curve: String },

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),
}
