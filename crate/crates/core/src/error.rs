use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("root iteration did not converge within {iterations} sweeps")]
    NonConvergence { iterations: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degrees {0} and {1} are not coprime")]
    CoprimalityViolation(usize, usize),

    #[error("root finding failed: {0}")]
    RootFindingFailure(String),

    #[error("ambiguous clustering: {0}")]
    AmbiguousClustering(String),

    #[error("quadrature budget of {0} panels exceeded")]
    QuadratureBudgetExceeded(usize),

    #[error("unsupported test function variant: {0}")]
    UnsupportedVariant(String),

    #[error("Fourier transform is not integrable: {0}")]
    NonIntegrableTransform(String),

    #[error("divergent constant: {0}")]
    DivergentConstant(String),

    #[error("invalid modulus of continuity: {0}")]
    InvalidModulus(String),

    #[error("invalid envelope: {0}")]
    InvalidEnvelope(String),

    #[error("no Holder constant available for {0}")]
    UnknownHolderConstant(String),

    #[error("dimension {0} is not supported here")]
    DimensionUnsupported(usize),

    #[error("point count {count} exceeds cap {cap}")]
    CapExceeded { count: usize, cap: usize },

    #[error("h_D = {0} exceeds 1/e")]
    PreconditionHeight(f64),

    #[error("fewer than {needed} primes in ({lo}, {hi})")]
    NoPrimesInWindow { lo: u64, hi: u64, needed: usize },

    #[error("could not recognize minimal polynomial: {0}")]
    Recognition(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by malformed user input rather than numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::InvalidConfig(_) | Error::Json(_) | Error::Io(_)
        )
    }
}
