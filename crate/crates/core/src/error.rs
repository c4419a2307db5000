use thiserror::Error;

/// Errors raised by the comb, embedding, sampling, contour and p-adic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid comb: {0}")]
    InvalidComb(String),

    #[error("position {position} lies outside the interval [{lo}, {hi}]")]
    OutsideInterval { position: f64, lo: f64, hi: f64 },

    #[error("interior face requested at {0}, which carries a tooth")]
    InteriorOnTooth(f64),

    #[error("approach sequence is not strictly monotone towards {target}")]
    NotMonotone { target: f64 },

    #[error("matrix is not ultrametric: d({i},{k}) > max(d({i},{j}), d({j},{k}))")]
    NotUltrametric { i: usize, j: usize, k: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("ordering violates the consecutive-maximum property at pair ({i}, {j})")]
    OrderViolation { i: usize, j: usize },

    #[error("point masses are required; compute a visibility measure first")]
    MissingMasses,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("the sphere at level {level} is empty (contour maximum {max})")]
    EmptySphere { level: f64, max: f64 },

    #[error("intervals ({0}, {1}) and ({2}, {3}) overlap or touch")]
    OverlappingIntervals(f64, f64, f64, f64),

    #[error("{0}")]
    Precision(String),

    #[error("valuation of zero is undefined")]
    ValuationOfZero,

    #[error("{0}")]
    PAdic(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Malformed input and I/O failures, as opposed to well-formed input that
    /// violates a mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Io(_))
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
