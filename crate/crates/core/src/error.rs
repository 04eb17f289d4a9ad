use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid fan: {check} check failed: {detail}")]
    InvalidFan { check: &'static str, detail: String },
    #[error("unknown catalog entry {name:?}; available: {available}")]
    UnknownCatalog { name: String, available: String },
    #[error("vector is not in the interior of the dual cone: {0}")]
    NotInterior(String),
    #[error("class is not big: {0}")]
    NotBig(String),
    #[error("search budget exceeded: {needed} visits > {limit}")]
    Budget { needed: u128, limit: u128 },
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("interpolation failed: {0}")]
    Interpolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
