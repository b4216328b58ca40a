//! Outcomes of the verifiers.

use serde::{Deserialize, Serialize};

/// How a property was established, or the witness that breaks it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Every relevant finite word was scanned.
    Exhaustive { checked: u64 },
    /// Follows from checked building blocks; `argument` names them.
    Structural { argument: String },
    /// The target graph is complete, so every symbol sequence is admissible.
    CompleteTarget,
    Failed { witness: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::Failed { .. })
    }

    pub(crate) fn structural(argument: &str) -> Self {
        Verdict::Structural { argument: argument.to_string() }
    }
}
