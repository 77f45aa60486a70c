use thiserror::Error;

/// Errors raised by the arithmetic, dynamics and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("modulus {0} is not a monic irreducible polynomial of the requested degree")]
    ReducibleModulus(String),
    #[error("field order {0} is too large for table arithmetic")]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomials are defined over different fields")]
    FieldMismatch,
    #[error("{0} is not a monic irreducible polynomial")]
    NotIrreducible(String),
    #[error("points are equal")]
    EqualPoints,
    #[error("the coordinate pair (0, 0) does not define a point")]
    ZeroPoint,
    #[error("the forms share a common root (vanishing resultant)")]
    DegenerateMap,
    #[error("forms have different degrees")]
    DegreeMismatch,
    #[error("map has bad reduction at {0}")]
    BadReductionPlace(String),
    #[error("iterate count must be at least 1")]
    IterateZero,
    #[error("Mobius transformation has zero determinant")]
    SingularMobius,
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("sample input {0} appears twice")]
    DuplicateSample(String),
    #[error("no admissible interpolating map exists")]
    NoAdmissibleSolution,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("map is not a polynomial with leading coefficient in the constant field units")]
    NotUnitLeadingPolynomial,
    #[error("map degree must be at least 2 for this operation")]
    DegreeTooLow,
    #[error("periodic point mismatch at {0}")]
    MismatchWitness(String),
    #[error("residue map is degenerate")]
    DegenerateResidueMap,
    #[error("orbit is not closed")]
    NotClosed,
    #[error("points do not form a cycle of the map: {0}")]
    NotACycle(String),
    #[error("target degree {degree} is below the field size {q}")]
    DegreeTooSmall { degree: usize, q: u64 },
    #[error("inputs must be pairwise distinct")]
    DuplicateInput,
    #[error("n-th powers of the inputs collide")]
    PowersCollide,
    #[error("unit must have multiplicative order greater than 1")]
    UnitOrderOne,
    #[error("constant-field conjugacy check failed: {0}")]
    ConjugacyVerificationFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
