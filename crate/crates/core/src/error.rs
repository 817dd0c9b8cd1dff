use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::ConstructionTrace;
use crate::model::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Environment variable that lifts the desk-scale size guards.
pub const GUARD_OVERRIDE_ENV: &str = "ODDMINOR_GUARD_OVERRIDE";

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error (line {line}, byte {offset}): {message}")]
    Parse {
        line: usize,
        offset: usize,
        message: String,
    },

    #[error("{operation}: n = {n} exceeds the size guard {limit} (set {GUARD_OVERRIDE_ENV}=1 to lift it)")]
    Guard {
        operation: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("precondition failed ({reason}): {detail}")]
    Precondition {
        reason: &'static str,
        detail: String,
    },

    #[error("constructed model failed verification: {violations:?}")]
    Unverified { violations: Vec<Violation> },

    #[error("theorem contradiction in {}: {}", .0.stage, .0.detail)]
    Contradiction(Box<ContradictionEvent>),
}

/// A guaranteed step of a constructive proof failed. These are research-significant:
/// the graph is kept so the event can be replayed.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ContradictionEvent {
    pub stage: String,
    pub detail: String,
    pub graph6: String,
    pub trace: ConstructionTrace,
}

impl Error {
    pub(crate) fn parse(line: usize, offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn precondition(reason: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            reason,
            detail: detail.into(),
        }
    }

    pub(crate) fn contradiction(
        stage: impl Into<String>,
        graph6: String,
        detail: impl Into<String>,
    ) -> Self {
        Error::Contradiction(Box::new(ContradictionEvent {
            stage: stage.into(),
            detail: detail.into(),
            graph6,
            trace: ConstructionTrace::default(),
        }))
    }

    /// Short machine-readable tag for reports and CLI output.
    pub fn reason(&self) -> &str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Guard { .. } => "guard",
            Error::Precondition { reason, .. } => reason,
            Error::Unverified { .. } => "unverified",
            Error::Contradiction(_) => "theorem-contradiction",
        }
    }
}

pub(crate) fn guard_overridden() -> bool {
    std::env::var(GUARD_OVERRIDE_ENV)
        .map(|v| !v.is_empty() && v != "0")
        .unwrap_or(false)
}

/// Checks a desk-scale guard. `hard_limit` is what the implementation can
/// represent at all and is never lifted.
pub(crate) fn check_guard(
    operation: &'static str,
    n: usize,
    limit: usize,
    hard_limit: usize,
) -> Result<()> {
    let effective = if guard_overridden() {
        hard_limit
    } else {
        limit
    };
    if n > effective {
        return Err(Error::Guard {
            operation,
            n,
            limit: effective,
        });
    }
    Ok(())
}
