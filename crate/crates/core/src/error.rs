use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {point} is within {radius:e} of a pole")]
    PoleProximity { point: Complex64, radius: f64 },

    #[error("adaptive quadrature did not reach tolerance within {panels} panels")]
    QuadratureFailure { panels: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contour error: {0}")]
    Contour(String),

    #[error("evaluator returned a non-finite value at {0}")]
    NonFinite(Complex64),

    #[error("symmetric limit diverges at {0}; pole of even order")]
    DivergenceDetected(Complex64),

    #[error("insufficient coefficients: {0}")]
    InsufficientCoefficients(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no convergence after {terms} terms")]
    ConvergenceFailure { terms: usize },

    #[error("range error: {0}")]
    Range(String),

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("not an Euler equation: {0}")]
    NotEulerForm(String),

    #[error("real form unavailable: root {0} has no conjugate partner")]
    RealFormUnavailable(Complex64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown function {0:?}")]
    UnknownFunction(String),

    #[error("method not applicable: {0}")]
    MethodInapplicable(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::PoleProximity { .. } => "PoleProximity",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::Domain(_) => "DomainError",
            Error::Contour(_) => "ContourError",
            Error::NonFinite(_) => "NonFinite",
            Error::DivergenceDetected(_) => "DivergenceDetected",
            Error::InsufficientCoefficients(_) => "InsufficientCoefficients",
            Error::Index(_) => "IndexError",
            Error::Unsupported(_) => "Unsupported",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::Range(_) => "RangeError",
            Error::Syntax { .. } => "SyntaxError",
            Error::NotEulerForm(_) => "NotEulerForm",
            Error::RealFormUnavailable(_) => "RealFormUnavailable",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::UnknownFunction(_) => "UnknownFunction",
            Error::MethodInapplicable(_) => "MethodInapplicable",
        }
    }
}
