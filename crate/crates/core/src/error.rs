use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("invalid semigroup table: {0}")]
    InvalidTable(String),
    #[error("semigroup has order {0}, expected 2")]
    WrongOrder(usize),
    #[error("order {0} exceeds the enumeration cap of 4")]
    OrderTooLarge(usize),
    #[error("unknown tag: {0}")]
    UnknownTag(String),
    #[error("grading violated: basis {0} * basis {1} leaves component {2}")]
    GradingViolation(usize, usize, String),
    #[error("unit vector does not act as identity")]
    BadUnit,
    #[error("algebras are graded by different semigroups")]
    SemigroupMismatch,
    #[error("unknown catalog name: {0}")]
    UnknownName(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("center does not split over the rationals: {0}")]
    NonSplit(String),
    #[error("the Jacobson radical is not a graded ideal")]
    RadicalNotGraded,
    #[error("semisimple quotient is not a direct sum of graded-simple graded ideals: {0}")]
    NoGradedDecomposition(String),
    #[error("algebra is nilpotent")]
    NilpotentAlgebra,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("substitution degree mismatch at position {0}")]
    DegreeMismatch(usize),
    #[error("empty sequence")]
    EmptySequence,
    #[error("partition has more than {0} parts")]
    TooManyParts(usize),
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid beta decomposition: {0}")]
    BetaInvalid(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("negative coordinate at index {0}")]
    NegativeCoordinate(usize),
    #[error("q = {0} is too small, need q >= 4")]
    QTooSmall(usize),
    #[error("polytope is infeasible")]
    Infeasible,
    #[error("optimization did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
