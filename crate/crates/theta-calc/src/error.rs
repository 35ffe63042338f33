//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level mismatch: expected level {expected}, got {got}")]
    LevelMismatch { expected: u32, got: u32 },

    #[error("children of a level-{level} object must all have level {}", level - 1)]
    BadChildLevel { level: u32 },

    #[error("composition mismatch: target of inner morphism differs from source of outer")]
    ComposeMismatch,

    #[error("site mismatch: operands live on different sites")]
    SiteMismatch,

    #[error("object does not belong to the site")]
    ObjectNotOnSite,

    #[error("arity mismatch: expected {expected} entries, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("spine requires m >= 2, got {0}")]
    SpineTooShort(usize),

    #[error("window is not closed: missing object {0}")]
    WindowNotClosed(String),

    #[error("presheaf is not finitely presented; tabulate over a window first")]
    NotPresented,

    #[error("level-zero part is not discrete at {0}")]
    NotDiscrete(String),

    #[error("object is not a strict Segal object: {0}")]
    NotStrict(String),

    #[error("vertex {0} is not present at level zero")]
    VertexNotFound(usize),

    #[error("composition does not descend to components: {0}")]
    CompositionDoesNotDescend(String),

    #[error("search bounds too small: {0}")]
    BoundsTooSmall(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
