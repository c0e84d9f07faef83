use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not in SL(2,C): |det - 1| = {drift:.3e}")]
    NotUnitDeterminant { drift: f64 },
    #[error("matrix is not trace-free: |tr| = {trace:.3e}")]
    NotTraceFree { trace: f64 },
    #[error("endomorphism is not skew for the Minkowski form (defect {defect:.3e})")]
    NotSkew { defect: f64 },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("integration base point {re} + {im}i is masked; choose another base point")]
    MaskedBasePoint { re: f64, im: f64 },
    #[error("secondary data (psi, eta) required but not provided")]
    MissingSecondary,
    #[error("invalid target: {0}")]
    InvalidTarget(String),
    #[error("nothing to mesh: every node is masked")]
    Unmeshable,

    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
