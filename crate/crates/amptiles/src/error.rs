use thiserror::Error;

/// Library-wide error type.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a Grassmannian point: matrix is rank-deficient")]
    RankDeficient,
    #[error("not realizable: {0}")]
    NotRealizable(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ground set mismatch: {0}")]
    GroundMismatch(String),
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("graph is not perfectly orientable")]
    NotOrientable,
    #[error("invalid marker tuple: {0}")]
    InvalidMarkers(String),
    #[error("invalid chord diagram: {0}")]
    InvalidChords(String),
    #[error("exchange relation failed: {0}")]
    ExchangeFailed(String),
    #[error("sign disagreement while certifying `{0}`: the functionary is not definite")]
    SignDisagreement(String),
    #[error("degenerate sampling: {0}")]
    DegenerateSampling(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("missing twistor entry for {0:?}")]
    MissingTwistor(Vec<u8>),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
