//! Elements with prescribed valuations at finitely many primes.

use super::field::{FieldCtx, QuadElem};
use super::ideal::FracIdeal;
use super::lattice::find_element;
use super::prime::{ideal_val, PrimeIdeal};
use super::ArithError;

/// A valuation condition at one prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValCond {
    /// ord_P(z) = k
    Exactly(i64),
    /// ord_P(z) > k
    Above(i64),
}

/// The smallest-norm z (deterministically ordered) with the given valuations
/// and nonnegative valuation at every other prime.
pub fn crt_construct(ctx: FieldCtx, conds: &[(PrimeIdeal, ValCond)]) -> Result<QuadElem, ArithError> {
    if conds.is_empty() {
        return Ok(ctx.one());
    }
    let mut lattice = FracIdeal::unit(ctx);
    for (i, (p, c)) in conds.iter().enumerate() {
        if conds[..i].iter().any(|(q, _)| q == p) {
            return Err(ArithError::InconsistentConstraints);
        }
        let lower = match *c {
            ValCond::Exactly(k) => k,
            ValCond::Above(k) => k + 1,
        };
        lattice = lattice.mul(&p.ideal().pow(lower));
    }
    find_element(&lattice, 256, |z| {
        let zi = match FracIdeal::principal(z) {
            Ok(i) => i,
            Err(_) => return false,
        };
        conds.iter().all(|(p, c)| {
            let v = ideal_val(&zi, p);
            match *c {
                ValCond::Exactly(k) => v == k,
                ValCond::Above(k) => v > k,
            }
        })
    })
    .ok_or(ArithError::SearchExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{primes_above, FieldCtx};

    #[test]
    fn prescribed_valuations() {
        let k = FieldCtx::new(-20).unwrap();
        let p2 = primes_above(k, 2).unwrap().remove(0);
        let p3 = primes_above(k, 3).unwrap();
        let conds = vec![(p2.clone(), ValCond::Exactly(1)), (p3[0].clone(), ValCond::Exactly(0)), (p3[1].clone(), ValCond::Above(1))];
        let z = crt_construct(k, &conds).unwrap();
        assert_eq!(p2.val_elem(&z).unwrap(), 1);
        assert_eq!(p3[0].val_elem(&z).unwrap(), 0);
        assert!(p3[1].val_elem(&z).unwrap() >= 2);
    }

    #[test]
    fn empty_constraints_give_one() {
        let k = FieldCtx::new(-67).unwrap();
        assert_eq!(crt_construct(k, &[]).unwrap(), k.one());
    }

    #[test]
    fn negative_valuation() {
        let k = FieldCtx::new(-67).unwrap();
        let q = primes_above(k, 17).unwrap().remove(0);
        let z = crt_construct(k, &[(q.clone(), ValCond::Exactly(-1))]).unwrap();
        assert_eq!(q.val_elem(&z).unwrap(), -1);
    }
}
