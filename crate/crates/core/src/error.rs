use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("expected a function (no derivative factors), got `{0}`")]
    NotAFunction(String),
    #[error("plane-wave symbol needs constant coefficients, got `{0}`")]
    NonConstantCoefficient(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("unknown letter {0:?} (expected one of X, Y, A, I, Q)")]
    UnknownLetter(char),
    #[error("malformed word {word}: Q may appear at most once and only in slot 1")]
    MisplacedQ { word: String },
    #[error("word {0} contains Q; a constant word is required")]
    NotConstant(String),
    #[error("word {0} must contain Q")]
    MissingQ(String),
    #[error("length mismatch: {0} has {1} letters, {2} has {3}")]
    LengthMismatch(String, usize, String, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}x{0} against {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("empty generator set")]
    Empty,
    #[error("generators have different lengths")]
    MixedLengths,
    #[error("signature ({p},{q}) does not match {count} generators")]
    SignatureCount { p: usize, q: usize, count: usize },
    #[error("invalid Clifford set: {0}")]
    Invalid(String),
    #[error("unknown catalog set {0:?}")]
    UnknownSet(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("commutant of an empty matrix list is undefined")]
    EmptyInput,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("commutant dimension {0} is not 1, 2 or 4")]
    UnsupportedDimension(usize),
    #[error("reducible/split representation: {0}")]
    Reducible(String),
    #[error("structure element squares to -{0}; no rational normalization exists")]
    NotNormalizable(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LleError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error("invalid LLE spec: {0}")]
    Invalid(String),
    #[error("operation requires a free equation (no potential terms)")]
    HasPotential,
    #[error("unknown catalog key {0:?}")]
    UnknownKey(String),
    #[error("config error: {0}")]
    Config(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Osp12Error {
    #[error("scaling weight undefined for `{0}` (only t, x, dt, dx, g and lam carry weights)")]
    UnsupportedSymbol(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}
