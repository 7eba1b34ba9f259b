use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("degree {degree} not supported here ({reason})")]
    BadDegree { degree: usize, reason: &'static str },

    #[error("metric is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("metric is not positive-definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("singular metric at point {point:?}")]
    SingularMetric { point: Vec<f64> },

    #[error("point {point:?} lies outside the sampling domain of chart `{chart}`")]
    OutOfDomain { chart: String, point: Vec<f64> },

    #[error("degenerate plane: |X|²|Y|² - g(X,Y)² = {area2:e}")]
    DegeneratePlane { area2: f64 },

    #[error("structure is not orthogonal for the metric (residual {residual:e})")]
    NotOrthogonal { residual: f64 },

    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
