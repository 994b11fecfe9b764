use thiserror::Error;

/// Errors raised by the geometry kernel.
///
/// Every variant maps to a stable machine-readable code via [`GeomError::code`],
/// which the service layer forwards to clients.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("signature mismatch between operands")]
    SignatureMismatch,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("argument outside the domain of the inverse function: {0}")]
    DomainError(String),
    #[error("value is undetermined: {0}")]
    Undetermined(String),
    #[error("nonzero coordinate {coord} meets an infinite pair type in product {index}")]
    InfiniteContribution { index: usize, coord: usize },
    #[error("inconsistent signature arithmetic: {0}")]
    InconsistentSignature(String),
    #[error("zero vector")]
    ZeroVector,
    #[error("limit vector has no natural norm")]
    LimitVector,
    #[error("vector is not a limit vector")]
    NotLimit,
    #[error("vectors are already orthogonal")]
    AlreadyOrthogonal,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("wrong signature: {0}")]
    WrongSignature(String),
    #[error("matrix is not GM-orthogonal: {0}")]
    NotGmOrthogonal(String),
    #[error("motion is improper")]
    ImproperMotion,
    #[error("all vectors are degenerate")]
    AllVectorsDegenerate,
    #[error("input family is not orthonormal")]
    InputNotOrthonormal,
    #[error("measure cannot be classified (w' = {w1}, w'' = {w2})")]
    UnclassifiableMeasure { w1: f64, w2: f64 },
    #[error("points are not connectable")]
    Unconnectable,
    #[error("antipodal points have no unique midpoint")]
    AntipodalAmbiguity,
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("vertex sum is a limit vector")]
    LimitSum,
    #[error("angle is unmeasurable: {0}")]
    UnmeasurableAngle(String),
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("not enough known parts to solve")]
    Underdetermined,
    #[error("inconsistent input, residual {0:e}")]
    Inconsistent(f64),
    #[error("integral does not converge: {0}")]
    NonConvergent(String),
    #[error("malformed quadratic form: {0}")]
    MalformedForm(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("orbit exceeded {0} nodes")]
    OrbitExplosion(usize),
}

impl GeomError {
    /// Stable snake-case code used in JSON error envelopes.
    #[must_use]
    pub fn code(&self) -> &'static str {
        use GeomError::*;
        match self {
            IndexOutOfRange { .. } => "index_out_of_range",
            DimensionMismatch { .. } => "dimension_mismatch",
            SignatureMismatch => "signature_mismatch",
            InvalidSignature(_) => "invalid_signature",
            DomainError(_) => "domain_error",
            Undetermined(_) => "undetermined",
            InfiniteContribution { .. } => "infinite_contribution",
            InconsistentSignature(_) => "inconsistent_signature",
            ZeroVector => "zero_vector",
            LimitVector => "limit_vector",
            NotLimit => "not_limit",
            AlreadyOrthogonal => "already_orthogonal",
            Degenerate(_) => "degenerate",
            Unsupported(_) => "unsupported",
            WrongSignature(_) => "wrong_signature",
            NotGmOrthogonal(_) => "not_gm_orthogonal",
            ImproperMotion => "improper_motion",
            AllVectorsDegenerate => "all_vectors_degenerate",
            InputNotOrthonormal => "input_not_orthonormal",
            UnclassifiableMeasure { .. } => "unclassifiable_measure",
            Unconnectable => "unconnectable",
            AntipodalAmbiguity => "antipodal_ambiguity",
            DegenerateTriangle => "degenerate_triangle",
            LimitSum => "limit_sum",
            UnmeasurableAngle(_) => "unmeasurable_angle",
            OutOfDomain(_) => "out_of_domain",
            Underdetermined => "underdetermined",
            Inconsistent(_) => "inconsistent",
            NonConvergent(_) => "non_convergent",
            MalformedForm(_) => "malformed_form",
            InvalidParams(_) => "invalid_params",
            OrbitExplosion(_) => "orbit_explosion",
        }
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
