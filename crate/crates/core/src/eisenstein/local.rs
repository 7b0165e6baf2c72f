//! Local components ω_v of an algebraic Hecke character at finite places,
//! evaluated on global elements.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{coprime_split, crt_construct, factor_ideal, FracIdeal, ModRing, PrimeIdeal, QuadElem, ValCond};
use crate::characters::{AlgValue, HeckeChar};

use super::EisError;

#[derive(Clone, Debug)]
struct RamifiedPlace {
    prime: PrimeIdeal,
    ring: ModRing,
    /// i ∈ P^e and j ∈ 𝔪P^{−e} with i + j = 1, when 𝔪 ≠ P^e.
    split: Option<(QuadElem, QuadElem)>,
    uniformizer: QuadElem,
    uniformizer_value: AlgValue,
}

/// The idelic character attached to an ideal character χ of type (a, b),
/// normalized so that ∏_v ω_v(x)·x^a·x̄^b = 1 for x ∈ F*.
#[derive(Clone, Debug)]
pub struct LocalChar {
    chi: Arc<HeckeChar>,
    ramified: Vec<RamifiedPlace>,
}

/// |x|_v = Nm(P)^{−ord_P x}.
pub fn abs_value(v: &PrimeIdeal, x: &QuadElem) -> Result<BigRational, EisError> {
    let k = v.val_elem(x)?;
    let n = BigRational::from_integer(BigInt::from(v.norm()));
    Ok(if k >= 0 { num_traits::Inv::inv(n).pow(k as i32) } else { n.pow((-k) as i32) })
}

impl LocalChar {
    pub fn new(chi: Arc<HeckeChar>) -> Result<LocalChar, EisError> {
        let ctx = chi.ctx();
        let modulus = chi.modulus().clone();
        let mut ramified = Vec::new();
        let places: Vec<(PrimeIdeal, i64)> = factor_ideal(&modulus)?.into_values().collect();
        for (p, e) in &places {
            let pe = p.ideal().pow(*e);
            let rest = modulus.div(&pe);
            let split = if rest.is_unit_ideal() { None } else { Some(coprime_split(&pe, &rest).ok_or(EisError::Recomposition("coprime split"))?) };
            let mut conds = vec![(p.clone(), ValCond::Exactly(1))];
            conds.extend(places.iter().filter(|(q, _)| q != p).map(|(q, _)| (q.clone(), ValCond::Exactly(0))));
            let uniformizer = crt_construct(ctx, &conds)?;
            ramified.push(RamifiedPlace { prime: p.clone(), ring: ModRing::new(&pe)?, split, uniformizer, uniformizer_value: AlgValue::one(ctx) });
        }
        let mut this = LocalChar { chi, ramified };
        for i in 0..this.ramified.len() {
            let value = this.compute_uniformizer_value(i)?;
            this.ramified[i].uniformizer_value = value;
        }
        Ok(this)
    }

    pub fn character(&self) -> &Arc<HeckeChar> {
        &self.chi
    }

    /// Primes where ω_v is ramified (those dividing the modulus).
    pub fn ramified_primes(&self) -> impl Iterator<Item = &PrimeIdeal> {
        self.ramified.iter().map(|r| &r.prime)
    }

    fn place(&self, v: &PrimeIdeal) -> Option<usize> {
        self.ramified.iter().position(|r| &r.prime == v)
    }

    /// ω_v on a v-adic unit at a ramified place, via an element α ≡ u mod P^e
    /// and α ≡ 1 modulo the rest of the modulus.
    fn unit_value(&self, idx: usize, u: &QuadElem) -> Result<AlgValue, EisError> {
        let place = &self.ramified[idx];
        let r = place.ring.reduce_star(u)?;
        let lift = place.ring.lift(r);
        let alpha = match &place.split {
            None => lift,
            Some((i, j)) => &(&lift * j) + i,
        };
        let inf = self.chi.infinity_component(&alpha)?;
        let global = self.chi.eval(&FracIdeal::principal(&alpha)?)?;
        Ok(AlgValue::from_elem(inf).mul(&global).inv()?)
    }

    fn compute_uniformizer_value(&self, idx: usize) -> Result<AlgValue, EisError> {
        let place = &self.ramified[idx];
        let pi = &place.uniformizer;
        let away = FracIdeal::principal(pi)?.div(place.prime.ideal());
        let mut v = AlgValue::from_elem(self.chi.infinity_component(pi)?).mul(&self.chi.eval(&away)?);
        for j in 0..self.ramified.len() {
            if j != idx {
                v = v.mul(&self.unit_value(j, pi)?);
            }
        }
        Ok(v.inv()?)
    }

    /// ω_v(x) for nonzero x ∈ F.
    pub fn value(&self, v: &PrimeIdeal, x: &QuadElem) -> Result<AlgValue, EisError> {
        let k = v.val_elem(x)?;
        match self.place(v) {
            None => Ok(self.chi.eval_prime(v)?.pow(k)?),
            Some(idx) => {
                let place = &self.ramified[idx];
                let unit = x.checked_div(&place.uniformizer.pow(k)?)?;
                Ok(place.uniformizer_value.pow(k)?.mul(&self.unit_value(idx, &unit)?))
            }
        }
    }
}
