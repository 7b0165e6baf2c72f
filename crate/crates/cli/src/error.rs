//! Errors surfaced as structured records on the command line.

use serde::Serialize;
use thiserror::Error;

use eisbound::arith::ArithError;
use eisbound::bound::BoundError;
use eisbound::characters::CharError;
use eisbound::classgrp::ClassGroupError;
use eisbound::cusps::CuspError;
use eisbound::eisenstein::EisError;
use eisbound::lfun::LfunError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Lfun(#[from] LfunError),
    #[error(transparent)]
    Eis(#[from] EisError),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

#[derive(Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn record(&self) -> ErrorRecord {
        let kind = match self {
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::Arith(_) => "arith",
            CliError::ClassGroup(_) => "classgroup",
            CliError::Cusp(_) => "cusps",
            CliError::Char(_) => "characters",
            CliError::Lfun(_) => "lfun",
            CliError::Eis(_) => "eisenstein",
            CliError::Bound(_) => "bound",
        };
        ErrorRecord { kind, message: self.to_string() }
    }
}
