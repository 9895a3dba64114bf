use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element #{index} is {value}; all elements must be positive")]
    NonPositiveElement { index: usize, value: i64 },

    #[error("bound u = {0} is negative")]
    NegativeBound(i64),

    #[error("target t = {0} is negative")]
    NegativeTarget(i64),

    #[error("target t = {t} exceeds bound u = {u}")]
    TargetExceedsBound { t: i64, u: i64 },

    #[error("instance has no target")]
    MissingTarget,

    #[error("modulus b = {0} must be at least 1")]
    InvalidModulus(i64),

    #[error("residue {residue} is not in 0..{modulus}")]
    ResidueOutOfRange { residue: usize, modulus: usize },

    #[error("element {element} is not congruent to {residue} mod {modulus}")]
    CongruenceViolation {
        element: usize,
        residue: usize,
        modulus: usize,
    },

    #[error("duplicate element {0}")]
    DuplicateElement(usize),

    #[error("cannot combine an empty sequence of sets")]
    EmptySequence,

    #[error("transform of length {required} exceeds the limit of {limit} coefficients")]
    TransformTooLarge { required: usize, limit: usize },

    #[error("grid strides differ ({left} vs {right})")]
    StrideMismatch { left: usize, right: usize },

    #[error("stride {stride} is too small; sum extents need at least {required}")]
    StrideTooSmall { stride: usize, required: usize },

    #[error("sum limit {limit} does not fit within stride {stride}")]
    SumLimitExceedsStride { limit: usize, stride: usize },

    #[error("brute-force enumeration supports at most {max} elements, got {n}")]
    TooManyElements { n: usize, max: usize },
}

impl Error {
    /// True for errors caused by a size or resource guard rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::TransformTooLarge { .. } | Error::TooManyElements { .. })
    }
}
