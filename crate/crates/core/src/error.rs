use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Calculation for k > 5 is not supported (k = {0})")]
    UnsupportedRank(u32),

    #[error("Skipping case because n = {0} is negative")]
    InvalidStem(i64),

    #[error("invalid generator {family}_{index}")]
    InvalidGenerator { family: &'static str, index: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vector width {found} does not match matrix width {expected}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("a monomial needs at least one factor")]
    EmptyMonomial,

    #[error("case (s={s}, t={t}, u={u}): {source}")]
    Case {
        s: u32,
        t: u32,
        u: u32,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
