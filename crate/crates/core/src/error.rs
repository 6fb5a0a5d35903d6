use thiserror::Error;

/// Errors raised by the word calculus, cover arithmetic and embedding builder.
///
/// Everything except [`Error::Internal`] is an input error: the caller handed
/// in something outside an operation's domain.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("cannot parse word: {0}")]
    WordParse(String),
    #[error("a generator trivially commutes with itself; commutes() needs distinct vertices")]
    SameVertex,
    #[error("graph is not connected")]
    Disconnected,
    #[error("cover vertices lie in different fibers ({0} vs {1})")]
    FiberMismatch(String, String),
    #[error("walk is not a vertex of this cover: {0}")]
    InvalidWalk(String),
    #[error("word is not reduced")]
    NotReduced,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("no reduced word of length {0} exists over this graph")]
    Unreachable(usize),
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
    #[error("json: {0}")]
    Json(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
