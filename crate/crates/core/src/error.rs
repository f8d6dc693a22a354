use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("{monomials} monomials over {vars} variables; an invertible polynomial needs equal counts")]
    MonomialCountMismatch { monomials: usize, vars: usize },

    #[error("exponent matrix is singular")]
    SingularExponentMatrix,

    #[error("exponent matrix has no positive weight solution")]
    NoPositiveSolution,

    #[error("exponent matrix is not a sum of Fermat, chain and loop atoms")]
    NotInvertibleType,

    #[error("Milnor number {0} is not an integer")]
    NonIntegerMilnorNumber(String),

    #[error("too many variables: {0} (at most {max})", max = crate::diagsym::MAX_VARS)]
    TooManyVariables(usize),

    #[error("element {0} is not in the maximal diagonal symmetry group")]
    GeneratorNotInGf(String),

    #[error("group is not a subgroup of the maximal diagonal symmetry group")]
    GroupNotSubgroupOfGf,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("character is not a character of the given group")]
    CharacterNotOfK,

    #[error("subgroup is not an isotropy subgroup")]
    SubgroupNotInIso,

    #[error("restricted Seifert form is degenerate")]
    DegenerateRestriction,

    #[error("phase {phase} is incompatible with exponent {exponent}")]
    PhaseDenominatorMismatch { phase: String, exponent: u32 },

    #[error("Sebastiani-Thom factors carry actions of different groups")]
    ActionGroupMismatch,

    #[error("Seifert matrix is singular")]
    SingularSeifertMatrix,

    #[error("fixture schema error: {0}")]
    Schema(String),

    #[error("fixture invariant violated: {0}")]
    InvariantViolation(String),

    #[error("Milnor algebra division left a remainder; singularity is not isolated")]
    NonIsolatedSingularity,

    #[error("no classical Milnor data for the isotropy subgroup of order {order} (fixed variables {fixed:?})")]
    MissingClassicalData { order: usize, fixed: Vec<usize> },

    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
