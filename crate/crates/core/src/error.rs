use thiserror::Error;

/// Errors raised by the geometry, catalog and chart pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate metric: |det g| = {det:e} is below {threshold:e}")]
    DegenerateMetric { det: f64, threshold: f64 },

    #[error("gram matrix is not symmetric (entry ({row},{col}) differs by {diff:e})")]
    AsymmetricGram { row: usize, col: usize, diff: f64 },

    #[error("structure constants are not antisymmetric at [e{i},e{j}]")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("structure constants violate the Jacobi identity (residual {residual:e})")]
    Jacobi { residual: f64 },

    #[error("invalid family parameters for {family}: {relation}")]
    InvalidFamilyParameters { family: String, relation: String },

    #[error("family {family} requires parameter `{name}`")]
    MissingParameter { family: String, name: String },

    #[error("family {family} does not take parameter `{name}`")]
    UnexpectedParameter { family: String, name: String },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("conformal factor must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error(
        "classification inconsistency for {spec}: numeric lcf={numeric}, case list lcf={case_list}"
    )]
    ClassificationInconsistency {
        spec: String,
        numeric: bool,
        case_list: bool,
    },

    #[error("cannot invert a jet whose value is {0:e}")]
    SingularJet(f64),

    #[error("at least one sample point is required")]
    NoPoints,
}

pub type Result<T> = std::result::Result<T, Error>;
