use thiserror::Error;

use crate::Sign;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("profile slopes must be finite and positive (gamma_plus = {plus}, gamma_minus = {minus})")]
    NonPositiveGamma { plus: f64, minus: f64 },

    /// The derivative vanishes at an endpoint, so the function sits on the
    /// boundary of a nodal class.
    #[error("derivative vanishes at the endpoint x = {endpoint}")]
    BoundaryCriticalPoint { endpoint: f64 },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("boundary coefficients are outside the nonnegative cone")]
    OutsideCone,

    #[error("expected exactly two phase roots at s = {s}, observed {count}")]
    RootCountMismatch { s: f64, count: usize },

    #[error("incomplete spectrum: {0}")]
    IncompleteSpectrum(String),

    #[error("branches disagree at k = {k}: {plus} vs {minus}")]
    BranchMismatch { k: usize, plus: f64, minus: f64 },

    #[error("diagonal crossing mismatch at k = {k}: {linear} vs {traced}")]
    DiagonalMismatch { k: usize, linear: f64, traced: f64 },

    #[error("lambda = {0} does not lie in a split interval")]
    NotSplitInterval(f64),

    #[error("trajectory blew up near x = {x}")]
    BlowUp { x: f64 },

    #[error("nodal condition fails for (k, nu) = ({k}, {nu}): product = {product}")]
    ConditionFails { k: usize, nu: Sign, product: f64 },

    #[error("branch lost at lambda = {lambda} (arclength step {step})")]
    BranchLost { lambda: f64, step: f64 },
}
