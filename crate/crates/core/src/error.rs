use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands live in different algebras or have the wrong block shapes.
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("singular value decomposition failed in block {block}")]
    Svd { block: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    /// A group data invariant is violated; the message names it.
    #[error("invalid group data ({name}): {invariant}")]
    InvalidGroup { name: String, invariant: String },

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown instance `{0}`")]
    UnknownInstance(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
