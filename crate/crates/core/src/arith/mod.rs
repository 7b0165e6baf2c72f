//! Exact arithmetic in imaginary quadratic fields: elements, fractional ideals,
//! prime decomposition, residue rings, and small lattice searches.

pub mod crt;
pub mod field;
pub mod ideal;
pub mod lattice;
pub mod matrix;
pub mod prime;
pub mod residue;

pub use crt::{crt_construct, ValCond};
pub use field::{is_fundamental_discriminant, kronecker, kronecker_symbol, FieldCtx, QuadElem};
pub use ideal::FracIdeal;
pub use lattice::{coprime_split, find_element, principal_generator, reduce_basis, small_elements};
pub use matrix::Mat2;
pub use prime::{factor_ideal, factor_prime, ideal_val, is_prime, primes_above, primes_up_to_norm, PrimeIdeal, PrimeKey, SplitType};
pub use residue::{ModRing, Residue};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements of different fields Q(sqrt {0}) and Q(sqrt {1})")]
    MixedFields(i64, i64),
    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),
    #[error("the zero ideal is not invertible")]
    ZeroIdeal,
    #[error("invalid Hermite normal form")]
    InvalidHnf,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("integer too large to factor")]
    FactorizationTooLarge,
    #[error("inconsistent valuation constraints")]
    InconsistentConstraints,
    #[error("element or ideal is not integral")]
    NotIntegral,
    #[error("element is not prime to the modulus")]
    NotCoprime,
    #[error("modulus too large for residue enumeration")]
    ModulusTooLarge,
    #[error("bounded lattice search found no element")]
    SearchExhausted,
}
