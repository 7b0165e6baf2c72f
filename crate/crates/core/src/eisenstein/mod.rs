//! Eisenstein constant terms: Bruhat and Iwasawa decompositions, local
//! components of Hecke characters, the function Ψ_φ on finite adelic points,
//! connected components of the locally symmetric space, the antisymmetry
//! check under the cusp involution, and Hecke eigenvalue data.

pub mod check;
pub mod components;
pub mod decomp;
pub mod hecke;
pub mod idele;
pub mod local;
pub mod psi;

pub use check::{constant_term_check, sample_battery, Cell, ComponentReport, ConstantTermReport, CuspEntry, IdentityFailure};
pub use components::{component_reps, ComponentRep};
pub use decomp::{bruhat_decompose, iwasawa_local, Bruhat, LocalIwasawa};
pub use hecke::{eis_hecke_data, HeckeEntry};
pub use idele::{DiagIdele, FinIdele};
pub use local::{abs_value, LocalChar};
pub use psi::{LocalFactor, PsiContext, PsiValue, Twist};

use thiserror::Error;

use crate::arith::ArithError;
use crate::characters::CharError;
use crate::classgrp::ClassGroupError;
use crate::cusps::CuspError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EisError {
    #[error("matrix is singular")]
    Singular,
    #[error("Ψ is not determined at {0}: the character ratio is ramified there")]
    UndefinedAtLevel(String),
    #[error("constant-term identity fails on component {component} for η = {eta}: {trace}")]
    IdentityFails { component: usize, eta: String, trace: String },
    #[error("prime {0} divides the level")]
    RamifiedPrime(String),
    #[error("found {found} components, expected {expected}")]
    ComponentCount { found: usize, expected: usize },
    #[error("decomposition failed to recompose: {0}")]
    Recomposition(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
    #[error(transparent)]
    Cusp(#[from] CuspError),
}
