//! Cusps of the maximal arithmetic groups H(𝔟) ⊂ SL₂(F).

pub mod cusp;
pub mod group;

pub use cusp::{
    cusp_equiv, cusp_ideal, cusp_reps, cusp_stabilizer, involution_image, involution_pairs, j_map, normalizing_matrix, stabilizer_element, unipotent_metadata,
    CuspClass, SummandData, UnipotentMetadata,
};
pub use group::MaxArithGroup;

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CuspError {
    #[error("cusp coordinates are both zero")]
    BothZero,
    #[error("the class of b is a square; pairing may have fixed points")]
    SquareClass { pairs: Vec<(usize, usize)> },
    #[error("internal consistency failure: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
