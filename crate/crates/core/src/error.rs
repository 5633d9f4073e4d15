use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("field of order {p}^{degree} exceeds 2^24 elements")]
    DegreeTooLarge { p: u32, degree: u32 },
    #[error("modulus is not a monic irreducible polynomial of the stated degree")]
    BadModulus,
    #[error("element rep {0} is out of range for this field")]
    BadElement(u32),
    #[error("element rep {0} does not lie in the subfield GF(q)")]
    NotInSubfield(u32),
    #[error("operation is undefined on the zero element")]
    Zero,
    #[error("field has odd extension degree, so it is not a quadratic tower")]
    NotQuadraticTower,
    #[error("Galois exponent e={e} must satisfy 0 <= e < m={m}")]
    BadExponent { e: u32, m: u32 },
    #[error("matrices belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("negative power requested while 0 is an evaluation point")]
    NegativePowerWithZeroPoint,
    #[error("invalid GRS data: {0}")]
    BadCode(String),
    #[error("generator matrix is rank deficient")]
    RankDeficient,
    #[error("minimum distance mode infeasible: {0}")]
    ModeInfeasible(String),
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("position {position} is out of range for length {length}")]
    BadPosition { position: usize, length: usize },
    #[error("lambda rep {0} is not a nonzero element of GF(q)")]
    LambdaNotInSubfield(u32),
    #[error("every field element is already an evaluation point")]
    FieldFull,
    #[error("code already has full dimension")]
    DimensionFull,
    #[error("corner g g^dagger is zero or outside GF(q), cannot be cancelled")]
    CornerNotCancellable,
    #[error("rule needs a non-extended input code")]
    AlreadyExtended,
    #[error("target hull {target} exceeds current hull {current}")]
    TargetAboveCurrent { target: usize, current: usize },
    #[error("no monomial scaling lowers the hull from {hull} (search exhausted)")]
    SearchExhausted { hull: usize },
    #[error("field too small for hull reduction: {0}")]
    FieldTooSmall(String),
    #[error("Gram matrix is not zero outside a single corner entry")]
    HullShapeMismatch,
    #[error("evaluation points do not enumerate the whole field")]
    NotFullField,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("no kernel vector with all coordinates nonzero: {0}")]
    NoAllNonzeroSolution(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("distance unknown for this input")]
    UnknownDistance,
    #[error("parameter range violation: {0}")]
    RangeViolation(String),
    #[error("predicted hull {predicted} violated by computed hull {computed} ({rule})")]
    PredictionViolated { rule: String, predicted: usize, computed: usize },
    #[error("descriptor error: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
