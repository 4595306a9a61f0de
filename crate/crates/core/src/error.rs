use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by matrix construction, transforms, and experiments.
#[derive(Debug, Error)]
pub enum Error {
    /// A cumulative weight `P_nu` needed by a Nörlund-type mean is zero.
    #[error("cumulative weight P_{0} is zero")]
    ZeroCumulativeWeight(usize),

    /// A row index beyond the matrix was requested.
    #[error("row {n} out of range (matrix holds rows 0..={n_max})")]
    RowOutOfRange { n: usize, n_max: usize },

    /// Classification needs at least two entries.
    #[error("row must contain at least two entries")]
    EmptyRow,

    /// Witness search only supports the two strict inclusions.
    #[error("unsupported class pair; witnesses exist for (MRBVS, RBVS) and (MHBVS, HBVS) only")]
    InvalidClassPair,

    /// A kernel-sum estimate was requested for a row that fails the class check.
    #[error("matrix row {n} is not in {class}")]
    NotInClass { n: usize, class: String },

    /// Coefficient quadrature is too coarse for the requested degree.
    #[error("degree {degree} needs at least {needed} quadrature points, got {got}")]
    InsufficientResolution {
        degree: usize,
        needed: usize,
        got: usize,
    },

    /// A partial sum or transform beyond the coefficient table was requested.
    #[error("degree {requested} exceeds coefficient table degree {available}")]
    DegreeExceeded { requested: usize, available: usize },

    /// `L^p` norms require `p >= 1`.
    #[error("L^p exponent must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),

    /// The modulus argument must lie in `[0, 2*pi]`.
    #[error("delta must lie in [0, 2*pi], got {0}")]
    InvalidDelta(f64),

    /// A modulus that vanishes at a positive argument cannot scale ratios.
    #[error("modulus vanishes at positive argument delta = {0}")]
    ZeroModulus(f64),

    /// Condition (Q) requires `0 <= gamma < beta + 1/p`.
    #[error("gamma = {gamma} outside the admissible range [0, {limit})")]
    InvalidGamma { gamma: f64, limit: f64 },

    /// A non-finite integrand value was encountered.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    /// Generic parameter validation failure.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Malformed CSV input.
    #[error("csv parse error at line {line}: {msg}")]
    CsvFormat { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
