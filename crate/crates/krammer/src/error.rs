use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("evaluation at zero base with negative exponent")]
    EvalDomain,

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("inverse entry does not simplify to a Laurent polynomial")]
    NonLaurentEntry,

    #[error("invalid braid word: {0}")]
    WordParse(String),

    #[error("generator index {index} out of range for {n} strands")]
    GeneratorIndex { n: usize, index: i64 },

    #[error("operation does not apply to cell {0}")]
    WrongCellKind(String),

    #[error("no deck label assigned to 1-cell generator {0}")]
    UnlabeledGenerator(String),

    #[error("none of the four candidate invariance identities holds for n = {n}")]
    InvarianceInconsistent { n: usize },

    #[error("matrix not Hermitian within tolerance (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("form is not negative definite at the given parameters")]
    NotDefinite,

    #[error("matrix does not preserve the form within tolerance (residual {residual:.3e})")]
    FormNotPreserved { residual: f64 },

    #[error("opaque expansion coefficient of {cell} meets a nonzero pairing")]
    UnknownCoefficientContribution { cell: String },

    #[error("boundary calibration failed: no derivative convention/unit reproduces the closed-form boundary formulas")]
    CalibrationFailed,

    #[error("q = 1 collapse of the normalized determinant does not match ((1-t)(1+t))^N")]
    CertificateMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
