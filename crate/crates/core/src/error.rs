use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("line {line}: negative timestamp {t}")]
    NegativeTimestamp { line: usize, t: i64 },

    #[error("line {line}: self-loop on vertex {label} (enable self-loops to keep it)")]
    SelfLoop { line: usize, label: i64 },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("invalid motif: {0}")]
    InvalidMotif(String),

    #[error("no spanning {kind} of the motif contains its earliest edge")]
    NoAnchor { kind: &'static str },

    #[error("work cap of {cap} exceeded")]
    CapExceeded { cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
