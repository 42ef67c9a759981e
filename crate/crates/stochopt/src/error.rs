use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("scenario probabilities sum to {got}, expected 1")]
    ProbabilityMismatch { got: String },
    #[error("cost {cost} for scenario {scenario}, keyword {keyword} outside [d, kappa*d] = [{lo}, {hi}]")]
    CostOutOfRange {
        scenario: usize,
        keyword: usize,
        cost: String,
        lo: String,
        hi: String,
    },
    #[error("budget must be a positive integer")]
    NonPositiveBudget,
    #[error("instance has no keywords or no scenarios")]
    EmptyInstance,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("slot constraint violated at keyword {keyword}: slot values sum to {sum} > 1")]
    SlotConstraintViolated { keyword: usize, sum: String },
    #[error("per-scenario budget {scenario} is not positive")]
    ZeroBudgetRow { scenario: usize },
    #[error("non-integral value where an integer is required: {0}")]
    NonIntegral(String),
    #[error("algorithm requires kappa = 1, got {0}")]
    KappaNotOne(u64),
    #[error("enumeration of {states} states exceeds the cap of {cap}")]
    TooLarge { states: String, cap: usize },
    #[error("target payoff {target} is infeasible even at the maximum budget")]
    Infeasible { target: String },
    #[error("randomized rounding could not produce a feasible solution")]
    RoundingFailed,
    #[error("rational arithmetic exceeded the configured bit budget")]
    NumericLimit,
    #[error("invalid MAX-2SAT-3 formula: {0}")]
    InvalidFormula(String),
    #[error("vector certificate check failed: {0}")]
    CertificateMismatch(String),
    #[error("invalid instance file: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
