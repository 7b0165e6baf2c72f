//! Serializable description of a character for round-tripping.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{FieldCtx, FracIdeal};

use super::hecke::HeckeChar;
use super::CharError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharRecord {
    pub discriminant: i64,
    /// HNF (den, a, b, c) of the modulus.
    pub modulus: [i64; 4],
    pub inf_type: (i64, i64),
    /// (order, exponent) per ray class generator.
    pub twist: Vec<(u64, u64)>,
}

impl CharRecord {
    pub fn of(chi: &HeckeChar) -> Result<Self, CharError> {
        let (den, a, b, c) = chi.modulus().hnf();
        let conv = |x: &BigInt| i64::try_from(x).map_err(|_| CharError::BadRecord("modulus too large".into()));
        Ok(CharRecord { discriminant: chi.ctx().disc(), modulus: [conv(den)?, conv(a)?, conv(b)?, conv(c)?], inf_type: chi.inf_type(), twist: chi.twist() })
    }

    pub fn build(&self) -> Result<HeckeChar, CharError> {
        let ctx = FieldCtx::new(self.discriminant)?;
        let [den, a, b, c] = self.modulus;
        let m = FracIdeal::from_hnf(ctx, den.into(), a.into(), b.into(), c.into())?;
        if !m.is_integral() {
            return Err(CharError::BadRecord("modulus is not integral".into()));
        }
        let ray = std::sync::Arc::new(crate::classgrp::RayClassGroup::new(&m)?);
        if ray.structure().len() != self.twist.len() {
            return Err(CharError::BadRecord("twist length does not match the ray class group".into()));
        }
        let mut index = 0usize;
        let mut scale = 1usize;
        for (&n, &(order, k)) in ray.structure().iter().zip(&self.twist) {
            if n != order || k >= order {
                return Err(CharError::BadRecord("twist entry does not match the ray class group".into()));
            }
            index += k as usize * scale;
            scale *= n as usize;
        }
        HeckeChar::build_on(ray, self.inf_type, index)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CharError> {
        serde_json::from_str(s).map_err(|e| CharError::BadRecord(e.to_string()))
    }
}
