//! Hypothesis verification for the Selmer lower bound and assembly of the
//! final report.

pub mod hypotheses;
pub mod report;

pub use hypotheses::{check_aux, check_hypotheses, AuxReport, AuxSelection, Condition, HypothesisReport, INERT_CONJECTURE};
pub use report::{example67, example67_config, run_pipeline, selmer_report, BoundSection, FieldSummary, PipelineConfig, PipelineReport, SelmerBoundReport};

use thiserror::Error;

use crate::arith::ArithError;
use crate::characters::CharError;
use crate::classgrp::ClassGroupError;
use crate::lfun::LfunError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("hypotheses failed: {}", .0.join("; "))]
    HypothesesFailed(Vec<String>),
    #[error("no p-adic valuation of the special value is available")]
    NoValuation,
    #[error("auxiliary prime lies in a different field")]
    FieldMismatch,
    #[error("report inputs disagree: {0}")]
    Mismatch(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
    #[error(transparent)]
    Lfun(#[from] LfunError),
}
