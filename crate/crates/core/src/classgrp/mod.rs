//! Class groups via reduced binary quadratic forms and ray class groups with
//! discrete logarithms.

pub mod abelian;
pub mod class;
pub mod form;
pub mod ray;

pub use abelian::AbelianStructure;
pub use class::ClassGroup;
pub use form::{reduced_forms, QuadForm};
pub use ray::RayClassGroup;

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassGroupError {
    #[error("forms of different discriminants {0} and {1}")]
    MixedDiscriminants(i64, i64),
    #[error("modulus must be a nonzero integral ideal")]
    NonIntegralModulus,
    #[error("ideal is not prime to the modulus")]
    NotCoprime,
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
