//! Crate-wide error type.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("variable sets differ: {0} vs {1}")]
    VarSetMismatch(String, String),

    #[error("invalid variable: {0}")]
    InvalidVariable(String),

    #[error("the zero polynomial has no degree")]
    ZeroDegree,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("inhomogeneous ideal generator: {0}")]
    Inhomogeneous(String),

    #[error("Sq^{i} {gen} is undetermined; complete the action table first")]
    Underdetermined { gen: String, i: u32 },

    #[error("products of symbolic unknowns are not representable")]
    NonlinearUnknowns,

    #[error("rank {0} is outside the supported range 1..=4")]
    RankOutOfRange(u32),

    #[error("{0} is not in the invariant subalgebra")]
    NotInvariant(String),

    #[error("unknown catalog entry `{name}`; available entries: {available}")]
    UnknownEntry { name: String, available: String },

    #[error("contradictory constraints: {0}")]
    Contradiction(String),

    #[error("unexpected solver outcome: {0}")]
    SolverOutcome(String),

    #[error("malformed presentation file: {0}")]
    Format(String),

    #[error("bockstein table rejected: {0}")]
    Bockstein(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
