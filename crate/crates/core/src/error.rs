use std::io;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("malformed profile document: {0}")]
    MalformedDocument(String),
    #[error("profile schema violation: {0}")]
    SchemaViolation(String),
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus contains no parseable profiles ({failed} records failed)")]
    EmptyCorpus { failed: usize },
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("not a snapshot file (bad magic bytes)")]
    NotASnapshot,
    #[error("snapshot format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("snapshot digest mismatch: file is truncated or corrupted")]
    DigestMismatch,
    #[error("snapshot decode failure: {0}")]
    Decode(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchError {
    #[error("query is empty after normalization")]
    EmptyQuery,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
}
