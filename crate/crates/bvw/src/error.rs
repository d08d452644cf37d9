use thiserror::Error;

use bv_core::{AlgebraError, BvError, CohomologyError, LatticeError};

use crate::dsl::Pos;

/// Everything that can stop a command before it produces a report.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: undeclared identifier `{name}`")]
    Undeclared { pos: Pos, name: String },
    #[error("{pos}: {msg}")]
    Invalid { pos: Pos, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Model(#[from] BvError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

impl CliError {
    pub fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        Self::Syntax { pos, msg: msg.into() }
    }

    pub fn invalid(pos: Pos, msg: impl Into<String>) -> Self {
        Self::Invalid { pos, msg: msg.into() }
    }
}
