use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has a zero leading coefficient and cannot be inverted")]
    ZeroLeadingCoefficient,

    #[error("coefficient of x^{requested} is unknown: series is only known below x^{order}")]
    BeyondTruncation { requested: i64, order: i64 },

    #[error("invalid invariant key: {0}")]
    InvalidKey(String),

    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    #[error("localization result has nonzero λ-degree terms: {0}")]
    DimensionMismatch(String),

    #[error("frame is degenerate at θ = {theta}: |det| = {magnitude:e} below floor {floor:e}")]
    DegenerateFrame {
        theta: f64,
        magnitude: f64,
        floor: f64,
    },

    #[error("phase unwrapping did not converge within {budget} samples")]
    NonConvergent { budget: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
