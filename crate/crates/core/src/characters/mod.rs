//! Algebraic Hecke characters of F: construction, evaluation, symmetry,
//! factorization, and Frobenius checks.

pub mod algvalue;
pub mod checks;
pub mod hecke;
pub mod record;

pub use algvalue::{radical, AlgValue, Radical};
pub use checks::{char_symmetry, conjugate_places_agree, frob_tame_check, phi_factor, SymmetryEntry, SymmetryReport};
pub use hecke::{infinity_value, unit_condition, GenData, HeckeChar};
pub use record::CharRecord;

use thiserror::Error;

use crate::arith::ArithError;
use crate::classgrp::ClassGroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("no character with this modulus and infinity type (unit obstruction)")]
    NoSuchCharacter,
    #[error("twist index {0} out of range for a group of order {1}")]
    TwistOutOfRange(usize, usize),
    #[error("ideal is not prime to the modulus")]
    NotCoprime,
    #[error("character must be unramified of infinity type (2, 0)")]
    NotUnramifiedWeightTwo,
    #[error("unsuitable auxiliary prime: {0}")]
    BadAuxPrime(String),
    #[error("character is ramified at v")]
    RamifiedAtV,
    #[error("v lies above p")]
    VDividesP,
    #[error("malformed character record: {0}")]
    BadRecord(String),
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
}
