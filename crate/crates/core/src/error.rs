use thiserror::Error;

/// Errors raised by the operator algebra, group and model layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch on {axis}: expected {expected}, found {found}")]
    DimensionMismatch {
        axis: String,
        expected: usize,
        found: usize,
    },

    #[error("operator is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("unsupported spin j = {two_j}/2")]
    UnsupportedSpin { two_j: u32 },

    #[error("elements do not commute (commutator norm {norm:.3e})")]
    NonCommuting { norm: f64 },

    #[error("gauge function is not unimodular (|lambda| = {modulus})")]
    NotUnimodular { modulus: f64 },

    #[error("subgroup is not closed: product of elements {left} and {right} is not in the list")]
    NotClosed { left: usize, right: usize },

    #[error("subgroup is not abelian: elements {left} and {right} do not commute")]
    NotAbelian { left: usize, right: usize },

    #[error("rank estimation is ill-conditioned; singular values {singular_values:?}")]
    RankEstimation { singular_values: Vec<f64> },

    #[error("observable word is empty")]
    EmptyWord,

    #[error("word of length {len} exceeds the limit of {max}")]
    WordTooLong { len: usize, max: usize },

    #[error("invalid generative triple: {0}")]
    InvalidTriple(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn mismatch(axis: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            axis: axis.into(),
            expected,
            found,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
