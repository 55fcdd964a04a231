use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Configuration problems are surfaced at model
/// build time, never in the middle of a training step.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("shape mismatch in {context}: expected {expected}, got {actual}")]
    Shape {
        context: String,
        expected: String,
        actual: String,
    },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("annotation parse error at byte {offset} (line {line}, column {column}): {message}")]
    AnnotationParse {
        offset: usize,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("missing image files:\n{}", .0.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join("\n"))]
    MissingImages(Vec<PathBuf>),

    #[error("training diverged at iteration {iteration}: non-finite loss on batch indices {batch_indices:?}")]
    NonFiniteLoss {
        iteration: usize,
        batch_indices: Vec<usize>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("image error: {0}")]
    Image(#[from] image::ImageError),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn shape(context: &str, expected: impl ToString, actual: impl ToString) -> Self {
        Error::Shape {
            context: context.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}
