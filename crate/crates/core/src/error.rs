use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sft::MixingObstruction;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-contract input.
    #[error("invalid input: {0}")]
    Input(String),
    /// A mathematical gate said no. Not a failure of the tool.
    #[error("refused: {0}")]
    Refused(Refusal),
    /// A configured search bound ran out before a construction succeeded.
    #[error("search exhausted: {0}")]
    Exhausted(String),
    /// An internal verifier rejected a constructed object.
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn refusal(&self) -> Option<&Refusal> {
        match self {
            Error::Refused(r) => Some(r),
            _ => None,
        }
    }
}

impl From<Refusal> for Error {
    fn from(r: Refusal) -> Self {
        Error::Refused(r)
    }
}

/// Reasons a gate refuses an input. Each carries its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refusal {
    NotPerfect { reason: String },
    NotMixing { obstruction: MixingObstruction },
    NotOnto { depth: usize, missing: String },
    NotChainMixing { depth: usize, obstruction: MixingObstruction },
    Percon { witness: u64 },
    FinitePeriodic,
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::NotPerfect { reason } => write!(f, "not perfect: {reason}"),
            Refusal::NotMixing { obstruction } => write!(f, "target not mixing: {obstruction}"),
            Refusal::NotOnto { depth, missing } => {
                write!(f, "not onto at depth {depth}: cylinder {missing} is missed")
            }
            Refusal::NotChainMixing { depth, obstruction } => {
                write!(f, "not chain mixing at depth {depth}: {obstruction}")
            }
            Refusal::Percon { witness } => write!(
                f,
                "period containment fails: period {witness} occurs in the source but not in the target"
            ),
            Refusal::FinitePeriodic => {
                write!(f, "source is a finite set of periodic points")
            }
        }
    }
}
