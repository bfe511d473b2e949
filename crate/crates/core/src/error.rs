use thiserror::Error;

/// Errors raised by permutation-group and finite-group machinery.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("element count exceeds cap of {cap}")]
    Overflow { cap: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("images do not form a bijection of 0..{degree}")]
    NotABijection { degree: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("multiplication table is not valid: {0}")]
    BadTable(String),
    #[error("map is not a homomorphism: images({a})*images({b}) != images({a}*{b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("map is not an automorphism")]
    NotAnAutomorphism,
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {order} too large to realize as a table (cap {cap})")]
    TableTooLarge { order: usize, cap: usize },
}

/// Errors raised when building or transforming quandles.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QuandleError {
    #[error("table is not square or has entries out of range")]
    Malformed,
    #[error("row {row} is not a permutation")]
    RowNotPermutation { row: usize },
    #[error("idempotence fails at {a}: {a}*{a} != {a}")]
    NotIdempotent { a: usize },
    #[error("left distributivity fails at ({a},{b},{c})")]
    NotLeftDistributive { a: usize, b: usize, c: usize },
    #[error("subset is not closed under conjugation")]
    NotClosedUnderConjugation,
    #[error("map is not an automorphism of the underlying group")]
    NotAnAutomorphism,
    #[error("subgroup is not fixed pointwise by the automorphism")]
    SubgroupNotFixed,
    #[error("coset operation is not well defined on representatives")]
    IllDefined,
    #[error("quandle is not connected")]
    NotConnected,
    #[error("quandle is not semiregular")]
    NotSemiregular,
    #[error("quandle is not faithful")]
    NotFaithful,
    #[error("map is not a quandle morphism at ({a},{b})")]
    NotAMorphism { a: usize, b: usize },
    #[error("size {size} exceeds cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("search exceeded cap of {cap} items")]
    Overflow { cap: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Errors raised by congruence-lattice computations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("partition is not a congruence: ({a},{b}) related but images split")]
    NotACongruence { a: usize, b: usize },
    #[error("partition size {got} does not match quandle size {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("subgroup is not in Norm(Q): {reason}")]
    NotInNorm { reason: String },
    #[error("lattice exceeded cap of {cap} congruences")]
    Overflow { cap: usize },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("quandle size {size} exceeds congruence cap of {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error(transparent)]
    Quandle(#[from] QuandleError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Errors raised by the enumerator and the verification searches.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("node budget of {budget} exhausted; enumeration incomplete")]
    BudgetExhausted { budget: u64 },
    #[error("size {size} not supported for this task (max {max})")]
    SizeUnsupported { size: usize, max: usize },
    #[error("invalid task: {0}")]
    BadTask(String),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}
