use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator index {index} out of range for an alphabet of {rank} generators")]
    InvalidGenerator { index: usize, rank: usize },

    #[error("unrecognised letter {letter:?} in word {word:?}")]
    InvalidLetter { letter: char, word: String },

    #[error("invalid group model: {0}")]
    InvalidModel(String),

    #[error(
        "subgroup generator {word:?} is not in product form: it mixes letters of several factors"
    )]
    NotProductForm { word: String },

    #[error("subgroup factor list has {got} entries but the model has {expected} factors")]
    FactorCountMismatch { expected: usize, got: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("vertex budget of {budget} exceeded while building a ball of radius {radius}")]
    BudgetExceeded { budget: usize, radius: usize },

    #[error("coset of {word:?} has no vertex in the base ball")]
    UnmatchedCoset { word: String },

    #[error("inconsistent ball pair: {0}")]
    InconsistentBalls(String),

    #[error("chain violation: generator {word:?} of {inner} is not a member of {outer}")]
    ChainViolation {
        inner: String,
        outer: String,
        word: String,
    },

    #[error("filtration depth {depth} exceeds base radius {radius}")]
    DepthExceedsRadius { depth: usize, radius: usize },

    #[error("cover radius {radius} is smaller than filtration depth {depth} plus margin {margin}")]
    RadiusTooSmall {
        radius: usize,
        depth: usize,
        margin: usize,
    },

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("window {window} needs at least that many levels, got {levels}")]
    WindowTooLarge { window: usize, levels: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
