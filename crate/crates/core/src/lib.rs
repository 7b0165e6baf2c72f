//! Arithmetic of imaginary quadratic fields, Hecke characters, and Eisenstein
//! cohomology data for bounding Selmer groups of CM elliptic curves.

pub mod arith;
pub mod bound;
pub mod characters;
pub mod classgrp;
pub mod cusps;
pub mod eisenstein;
pub mod lfun;
pub mod numeric;
