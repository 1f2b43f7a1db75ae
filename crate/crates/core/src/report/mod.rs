//! Job-driven runs: parse a job, execute its tasks, emit a report.

mod checks;
mod job;
mod run;

pub use checks::{
    check_corollary, check_monotonicity, classify_regime, classify_with, corollary_verdict,
    monotonicity_verdict, CorollaryCheck, MonotonicityCheck, Regime, RegimeLabel, Verdict,
    VIOLATION_NOTE,
};
pub use job::{parse_group_spec, parse_word_list, Format, Job, ParamOverrides, Task, TaskKind};
pub use run::{run_job, Report, RunOptions, TaskResult};

use thiserror::Error;

/// Failures of a job run, each with its own process exit code.
#[derive(Debug, Error)]
pub enum JobError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("cannot parse job: {0}")]
    Parse(String),

    #[error("invalid job: {0}")]
    Validation(crate::Error),

    #[error("invalid job: {0}")]
    Undefined(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Compute(#[from] crate::Error),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Usage(_) => 64,
            JobError::Parse(_) => 65,
            JobError::Validation(_) | JobError::Undefined(_) => 66,
            JobError::Compute(crate::Error::ChainViolation { .. }) => 67,
            JobError::Compute(crate::Error::BudgetExceeded { .. }) => 68,
            JobError::Io { .. } => 69,
            JobError::Compute(_) => 70,
        }
    }
}
