use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on node {0}: self-loops are not representable at any level")]
    SelfLoop(u64),

    #[error("edge endpoint {0} does not exist")]
    DanglingEdge(u64),

    #[error("duplicate node id {0}")]
    DuplicateNode(NodeId),

    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(NodeId, NodeId),

    #[error("malformed decontraction on {context}: {reason}")]
    MalformedDec { context: String, reason: String },

    #[error("graph is not a contraction: {0}")]
    NotAContraction(String),

    #[error("unknown node {0}")]
    UnknownNode(NodeId),

    #[error("level {level} out of range (height {height})")]
    LevelOutOfRange { level: usize, height: usize },

    #[error("feature set was detected on a different graph (fingerprint {expected}, graph {actual})")]
    FingerprintMismatch { expected: String, actual: String },

    #[error("unknown contraction scheme tag `{0}`")]
    UnknownScheme(String),

    #[error("invalid parameters for scheme `{tag}`: {reason}")]
    InvalidParams { tag: String, reason: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("corpus error at line {line}: {reason}")]
    Corpus { line: usize, reason: String },

    #[error("malformed DOT input: {0}")]
    Dot(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn malformed(context: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::MalformedDec {
            context: context.into(),
            reason: reason.into(),
        }
    }
}
