use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: every cyclic factor must have order at least 2")]
    InvalidModulus(u64),

    #[error("group order exceeds the supported maximum of {max}")]
    OrderTooLarge { max: usize },

    #[error("invalid invariant factors {0:?}: need n_1 >= 2 and n_i | n_(i+1)")]
    InvalidType(Vec<u64>),

    #[error("element index {index} out of range for a group of order {order}")]
    ElementRange { index: usize, order: usize },

    #[error("coordinates {coords:?} do not describe an element of type {factors:?}")]
    CoordinateRange { coords: Vec<u64>, factors: Vec<u32> },

    #[error("subgroup enumeration limited to order {bound}, group has order {order}")]
    EnumerationLimit { order: usize, bound: usize },

    #[error("quotient type {quotient:?} is not compatible with {factors:?}")]
    InvalidQuotient {
        quotient: Vec<u32>,
        factors: Vec<u32>,
    },

    #[error("{index} does not divide the group order {order}")]
    InvalidIndex { index: u64, order: usize },

    #[error("3-part of {index} does not fit in the exponent {exponent}")]
    ConstraintInfeasible { index: u64, exponent: u32 },

    #[error("subset is empty")]
    EmptySet,

    #[error("subset lives in a universe of size {found}, expected {expected}")]
    UniverseMismatch { expected: usize, found: usize },

    #[error("invalid h = {0}: the h-fold sumset needs h >= 1")]
    InvalidH(usize),

    #[error("engine invariant violated: {0}")]
    EngineInvariant(String),

    #[error("I*(G, {m}) needs last digit >= 3, found {last_digit}")]
    DegenerateStar { m: usize, last_digit: u32 },

    #[error("segment length {m} outside 1..{order}")]
    SegmentRange { m: usize, order: usize },

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("construction hypothesis violated: {0}")]
    ConstructionHypothesis(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid subgroup chain: {0}")]
    InvalidChain(String),

    #[error("invalid chain choices: assembled set has 0 in 3A")]
    InvalidChoices,

    #[error("target {target} is not in the predicted set {predicted:?}")]
    UnrealizableTarget {
        target: usize,
        predicted: Vec<usize>,
    },

    #[error("construction for target {target} produced |A| = {set_size}, |hA| = {hfold_size}")]
    TheoremViolation {
        target: usize,
        set_size: usize,
        hfold_size: usize,
    },

    #[error("no closed form for h = {0}; use the exhaustive oracle")]
    UnsupportedH(usize),

    #[error("search needs {required} subsets, budget is {budget}")]
    SearchBudget { required: u128, budget: u64 },

    #[error("exhaustive search supports groups of order <= {max}, got {order}")]
    SearchTooLarge { order: usize, max: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("structure violation at rank {level}: residual set {residual:?}")]
    StructureViolation { level: usize, residual: Vec<usize> },

    #[error("parse error: {0}")]
    Parse(String),
}
