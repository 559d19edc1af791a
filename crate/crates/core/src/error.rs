use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),

    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("labeling has {got} labels but the graph has {expected} edges")]
    LabelCount { expected: usize, got: usize },

    #[error("labeling is not magic")]
    NotMagic,

    #[error("labeling is not magic of index {0}")]
    WrongIndex(u64),

    #[error("invalid semigroup element: {0}")]
    InvalidElement(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("budget exceeded: {what} needs {required}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: String,
        budget: u64,
    },

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("samples are not a quasipolynomial of period {period} and degree {degree}: mismatch at k = {k}")]
    FitValidation { period: usize, degree: usize, k: usize },

    #[error("not enough samples: need {needed}, have {have}")]
    NotEnoughSamples { needed: usize, have: usize },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
