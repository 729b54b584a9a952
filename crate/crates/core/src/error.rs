use thiserror::Error;

use crate::chain::Diagnostic;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex `{0}` not found")]
    NotFound(String),

    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),

    #[error("self-loop on `{0}`")]
    SelfLoop(String),

    #[error("invalid vertex pair ({0}, {1})")]
    InvalidPair(String, String),

    #[error("edge {{{0}, {1}}} joins two existing vertices that are not already adjacent")]
    IllegalCrossEdge(String, String),

    #[error("series bound mismatch: k = {0} vs k = {1}")]
    Dimension(usize, usize),

    #[error("brute-force enumeration refuses {edges} edges (limit {limit})")]
    TooLarge { edges: usize, limit: usize },

    #[error("vertex sets overlap at `{0}`")]
    InvalidSets(String),

    #[error("invalid attach profile: {0}")]
    InvalidProfile(String),

    #[error("k-matching vector is taken over ({got_a}, {got_b}) but the transfer matrix attaches at ({want_a}, {want_b})")]
    PairMismatch {
        got_a: String,
        got_b: String,
        want_a: String,
        want_b: String,
    },

    #[error("invalid chain ({} error(s)): {}", .0.len(), first_message(.0))]
    InvalidChain(Vec<Diagnostic>),

    #[error("bad generator parameters: {0}")]
    BadSpec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn first_message(diags: &[Diagnostic]) -> String {
    diags.first().map(|d| d.to_string()).unwrap_or_default()
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
