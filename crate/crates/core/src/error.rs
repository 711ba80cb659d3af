use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{q} is not a prime power: {detail}")]
    NotPrimePower { q: usize, detail: String },
    #[error("field order {q} exceeds the supported maximum {max}")]
    TooLarge { q: usize, max: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unsupported formed space: {0}")]
    Unsupported(String),
    #[error("vector length {got} does not match dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("form is inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid construction parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("geometry fails validation: {0}")]
    Geometry(String),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not connected")]
    NotConnected,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Malformed text input, with a 1-based position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator {index} has degree {got}, expected {expected}")]
    DegreeMismatch { index: usize, expected: usize, got: usize },
    #[error("image list is not a permutation: {0}")]
    NotAPermutation(String),
    #[error("group is not transitive on {degree} points")]
    Intransitive { degree: usize },
    #[error("graph has {n} vertices, above the automorphism-search bound {bound}; supply a group fixture")]
    TooLarge { n: usize, bound: usize },
    #[error("permutation {index} is not an automorphism: it maps edge {{{u}, {v}}} to a non-edge")]
    NotAutomorphism { index: usize, u: usize, v: usize },
    #[error("point {point} is outside the degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("level {level}: {count} subgraph classes exceed the cap {cap}; is the group correct?")]
    ClassExplosion { level: usize, count: usize, cap: usize },
    #[error("invalid request: {0}")]
    Invalid(String),
}
