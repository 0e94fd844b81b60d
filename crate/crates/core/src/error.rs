use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("path text is empty")]
    EmptyPath,
    #[error("invalid step {found:?} at position {position}, expected one of {expected}")]
    InvalidStep {
        found: char,
        position: usize,
        expected: &'static str,
    },
    #[error("path of {0} steps exceeds the {max} step limit", max = crate::MAX_STEPS)]
    PathTooLong(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("path {path} is not a member of {family}")]
    NotInFamily { path: String, family: String },
    #[error("mark {mark} out of range 1..={max}")]
    MarkOutOfRange { mark: u32, max: u32 },
    #[error("rank {rank} out of range for a family of {size} paths")]
    RankOutOfRange { rank: u128, size: u128 },
    #[error("path length {len} is not divisible by {k}")]
    LengthNotDivisible { len: usize, k: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An exact division that must be exact by theory left a remainder, or
    /// two evaluations of the same identity disagreed. Always a bug.
    #[error("identity check failed: {0}")]
    IdentityFailure(String),
}
