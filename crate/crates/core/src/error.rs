use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eft overflow")]
    EftOverflow,
    #[error("fast_two_sum ordering violated")]
    FastTwoSumOrder,
    #[error("split overflow")]
    SplitOverflow,
    #[error("eft range error")]
    EftRange,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dd overflow")]
    DdOverflow,
    #[error("dd division by zero")]
    DdDivisionByZero,
    #[error("non-finite input")]
    NonFinite,
    #[error("q1 breakdown at index {index}")]
    Q1Breakdown { index: usize },
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("progressive breakdown at sweep {sweep}, column {column}")]
    ProgressiveBreakdown { sweep: usize, column: usize },
    #[error("invalid factor: pole at the origin")]
    InvalidFactor,
    #[error("non-real zeros unsupported")]
    NonRealZeros,
    #[error("need larger degree: {0}")]
    NeedLargerDegree(String),
    #[error("table shape mismatch")]
    ShapeMismatch,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
