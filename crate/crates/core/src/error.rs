use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("q = {q} is not admissible: {reason}")]
    InadmissibleQ { q: String, reason: String },

    #[error("denominator vanishes at the evaluation point")]
    VanishingDenominator,

    #[error("variable `{0}` has no value at the evaluation point")]
    UnboundVariable(&'static str),

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("letter `{0}` has no image under the generator map")]
    MissingImage(char),

    #[error("rule `{rule}` does not match word {word} at position {position}")]
    PatternMismatch {
        rule: String,
        word: String,
        position: usize,
    },

    #[error("invalid reduction rule `{rule}`: {reason}")]
    InvalidRule { rule: String, reason: String },

    #[error("normal form exceeded the step budget of {0} reductions")]
    StepBudgetExceeded(u64),

    #[error("word {0} is reducible")]
    ReducibleWord(String),

    #[error("not a Lie polynomial; offending words: {0:?}")]
    NotLiePolynomial(Vec<String>),

    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}
