//! Rational reconstruction of high-precision reals and p-adic valuations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::Float;

use crate::numeric::{integer_to_bigint, rational_to_float};

/// The first continued-fraction convergent p/q of `x` with q ≤ `max_den` and
/// |x − p/q| < `tol`.
pub fn reconstruct(x: &Float, max_den: &BigInt, tol: &Float) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let prec = x.prec();
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut y = x.clone();
    for _ in 0..(prec as usize) {
        let a_f = y.clone().floor();
        let a = integer_to_bigint(&a_f.to_integer()?);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if &q2 > max_den {
            return None;
        }
        let r = BigRational::new(p2.clone(), q2.clone());
        let err = Float::with_val(prec, x - rational_to_float(prec, &r)).abs();
        if err < *tol {
            return Some(r);
        }
        let frac = Float::with_val(prec, &y - &a_f);
        if frac.is_zero() {
            return None;
        }
        y = Float::with_val(prec, 1u32 / frac);
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    None
}

/// ord_p of a nonzero rational.
pub fn val_p(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let count = |n: &BigInt| {
        let pb = BigInt::from(p);
        let mut m = n.abs();
        let mut k = 0i64;
        while (&m % &pb).is_zero() {
            m /= &pb;
            k += 1;
        }
        k
    };
    Some(count(r.numer()) - count(r.denom()))
}
