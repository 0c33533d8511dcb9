use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("coordinate axis {axis} out of range for {num_vars} variables")]
    AxisOutOfRange { axis: usize, num_vars: usize },
    #[error("chart dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("complex dimension must be between 1 and {max}, got {got}")]
    InvalidDimension { got: usize, max: usize },
    #[error("twist matrix must be strictly upper triangular: entry ({row}, {col}) is nonzero")]
    NotStrictlyTriangular { row: usize, col: usize },
    #[error("matrix shape mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("J*J != -I")]
    NotAlmostComplex,
    #[error("bundle rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("form degree mismatch: {0}")]
    Degree(String),
    #[error("invalid bidegree ({p}, {q}) for degree {degree}")]
    Bidegree { p: i32, q: i32, degree: i32 },
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("operator is not a derivation of the expected type: {0}")]
    NotADerivation(String),
    #[error("element is not nilpotent within {bound} powers")]
    NotNilpotent { bound: usize },
    #[error("commutable degree exceeds bound {bound}")]
    CommutableBound { bound: usize },
    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
    #[error("unknown chart `{0}`")]
    UnknownChart(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
