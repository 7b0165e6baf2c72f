//! Finite ideles with finite support, each local component given by a global
//! element.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::arith::{crt_construct, factor_ideal, FieldCtx, FracIdeal, PrimeIdeal, PrimeKey, QuadElem, ValCond};

use super::local::abs_value;
use super::EisError;

/// (x_v) with x_v = 1 outside a finite set of places.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinIdele {
    ctx: FieldCtx,
    comps: BTreeMap<PrimeKey, (PrimeIdeal, QuadElem)>,
}

impl FinIdele {
    pub fn one(ctx: FieldCtx) -> FinIdele {
        FinIdele { ctx, comps: BTreeMap::new() }
    }

    /// An idele generating the ideal I, with component π_P^{ord_P I} where π_P
    /// has ord_P = 1.
    pub fn from_ideal(i: &FracIdeal) -> Result<FinIdele, EisError> {
        let ctx = i.ctx();
        let mut out = FinIdele::one(ctx);
        for (p, e) in factor_ideal(i)?.into_values() {
            let pi = crt_construct(ctx, &[(p.clone(), ValCond::Exactly(1))])?;
            out.set(&p, pi.pow(e)?);
        }
        Ok(out)
    }

    /// The idele equal to x at each listed place and 1 elsewhere.
    pub fn at_places(x: &QuadElem, places: &[PrimeIdeal]) -> FinIdele {
        let mut out = FinIdele::one(x.ctx());
        for p in places {
            out.set(p, x.clone());
        }
        out
    }

    pub fn set(&mut self, v: &PrimeIdeal, x: QuadElem) {
        self.comps.insert(PrimeKey::of(v), (v.clone(), x));
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn component(&self, v: &PrimeIdeal) -> QuadElem {
        self.comps.get(&PrimeKey::of(v)).map(|(_, x)| x.clone()).unwrap_or_else(|| self.ctx.one())
    }

    pub fn support(&self) -> impl Iterator<Item = &PrimeIdeal> {
        self.comps.values().map(|(p, _)| p)
    }

    pub fn mul(&self, o: &FinIdele) -> FinIdele {
        let mut out = self.clone();
        for (p, x) in o.comps.values() {
            let y = &out.component(p) * x;
            out.set(p, y);
        }
        out
    }

    /// The ideal ∏ P^{ord_P x_P}.
    pub fn ideal(&self) -> Result<FracIdeal, EisError> {
        let mut out = FracIdeal::unit(self.ctx);
        for (p, x) in self.comps.values() {
            out = out.mul(&p.ideal().pow(p.val_elem(x)?));
        }
        Ok(out)
    }

    /// |x|_f = ∏_v |x_v|_v.
    pub fn abs(&self) -> Result<BigRational, EisError> {
        let mut out = BigRational::one();
        for (p, x) in self.comps.values() {
            out *= abs_value(p, x)?;
        }
        Ok(out)
    }
}

/// diag(t₁, t₂) ∈ GL₂(𝔸_f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagIdele {
    pub t1: FinIdele,
    pub t2: FinIdele,
}

impl DiagIdele {
    pub fn identity(ctx: FieldCtx) -> DiagIdele {
        DiagIdele { t1: FinIdele::one(ctx), t2: FinIdele::one(ctx) }
    }

    pub fn support(&self) -> Vec<PrimeIdeal> {
        self.t1.support().chain(self.t2.support()).cloned().collect()
    }
}
