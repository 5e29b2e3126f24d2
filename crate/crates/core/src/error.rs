use thiserror::Error;

use crate::axioms::AxiomReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A structure map is partial, references an unknown identifier, or a
    /// table row lies outside the pair-set it is defined on.
    #[error("malformed data: {0}")]
    MalformedData(String),

    #[error("unknown cell: {0}")]
    UnknownCell(String),

    /// The data is well formed but is not a 2-category.
    #[error("axioms violated: {0}")]
    AxiomsViolated(Box<AxiomReport>),

    #[error("mismatched boundary: {0}")]
    MismatchedBoundary(String),

    #[error("mismatched target: {0}")]
    MismatchedTarget(String),

    #[error("search cap exceeded: {0}")]
    SearchCapExceeded(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("cyclic presentation: {0}")]
    CyclicPresentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedData(msg.into())
}
