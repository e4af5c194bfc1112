use std::io;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A requested allocation exceeds the configured cap.
    #[error("resource limit exceeded: {requested} entries requested, cap is {cap}")]
    Resource { requested: u64, cap: u64 },
    /// Malformed input text (kernel names, rationals, ...).
    #[error("parse error: {0}")]
    Parse(String),
    /// Malformed binary or image file.
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
