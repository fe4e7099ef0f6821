//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CohoxError {
    #[error("hom is not well-defined: relator {relator} is not mapped into the target relation span")]
    IllDefinedHom { relator: usize },

    #[error("subgroup operation on mismatched ambient groups")]
    AmbientMismatch,

    #[error("enumeration budget exceeded: {required} needed, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("vertex map does not send simplex {simplex:?} to a simplex of the target")]
    InvalidSimplicialMap { simplex: Vec<usize> },

    #[error("refinement invalid: member {member} is not contained in its assigned coarse member")]
    InvalidRefinement { member: usize },

    #[error("cochain degree mismatch")]
    DegreeMismatch,

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("source is not sphere-like: {reason}")]
    NotSphereLike { reason: String },

    #[error("dimension hypothesis violated: pair has a simplex of dimension {dim} > {n}")]
    DimensionHypothesis { dim: usize, n: usize },

    #[error("maps do not satisfy the agreement precondition; witness simplex {simplex:?}")]
    AgreementViolation { simplex: Vec<usize> },

    #[error("weights for point {point} are not supported on members containing it (member {member})")]
    WeightSupport { point: usize, member: usize },

    #[error("weights for point {point} do not sum to 1")]
    WeightSum { point: usize },

    #[error("bonding map at stage {stage} does not commute with the differentials")]
    NonChainMap { stage: usize },

    #[error("presentation map is not injective")]
    NonInjectivePresentation,

    #[error("phantom filtration requires exhaustion data")]
    MissingExhaustion,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{name}: {detail}")]
    Validation { name: &'static str, detail: String },
}

/// Enumeration budget for brute-force searches (cocycle tables,
/// automorphism candidates). Counted in table entries.
#[derive(Clone, Copy, Debug)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(1_000_000)
    }
}

impl Budget {
    pub fn check(&self, required: u64, what: &str) -> Result<(), CohoxError> {
        if required > self.0 {
            Err(CohoxError::BudgetExceeded {
                required: format!("{what}: {required}"),
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}
