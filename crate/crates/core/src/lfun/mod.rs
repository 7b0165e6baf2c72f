//! Hecke L-series: Dirichlet coefficients, smoothed evaluation, root numbers,
//! elliptic periods, and normalized special values.

pub mod coeffs;
pub mod gamma;
pub mod period;
pub mod recon;
pub mod report;
pub mod series;

pub use coeffs::dirichlet_coeffs;
pub use gamma::upper_gamma;
pub use period::{chowla_selberg_crosscheck, has_cm_by_maximal_order, kraus_ok, minimal_c4_c6, model_period, neron_period, ChowlaSelberg, Curve};
pub use recon::{reconstruct, val_p};
pub use report::{l_alg_report, l_int, LConfig, LValueReport, PeriodSource};
pub use series::{required_terms, root_number, root_number_formula, LSeries, LValue, RootMode};

use thiserror::Error;

use crate::arith::ArithError;
use crate::characters::CharError;
use crate::classgrp::ClassGroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LfunError {
    #[error("precision unreachable: {needed} coefficients needed, at most {max} allowed")]
    PrecisionUnreachable { needed: usize, max: usize },
    #[error("root-number formula only applies to unramified characters")]
    RamifiedFormulaUnsupported,
    #[error("curve is singular")]
    SingularCurve,
    #[error("malformed curve: {0}")]
    BadCurve(String),
    #[error("rational reconstruction failed")]
    ReconstructionFailed,
    #[error("character modulus is not coprime to p")]
    ConductorNotCoprime,
    #[error("conductor too large")]
    ConductorTooLarge,
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
}
