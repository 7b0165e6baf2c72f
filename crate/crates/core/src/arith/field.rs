//! The field F = Q(√d) and its elements in the basis {1, ω}.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ArithError;

/// An imaginary quadratic field given by its fundamental discriminant.
///
/// The integral basis is {1, ω} with ω = √(d/4) when 4 | d and
/// ω = (1+√d)/2 otherwise, so that ω² = tω − n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldCtx {
    d: i64,
    t: i64,
    n: i64,
    w: u32,
}

impl FieldCtx {
    pub fn new(d: i64) -> Result<Self, ArithError> {
        if !is_fundamental_discriminant(d) {
            return Err(ArithError::NotFundamental(d));
        }
        let (t, n) = if d.rem_euclid(4) == 0 { (0, -d / 4) } else { (1, (1 - d) / 4) };
        let w = match d {
            -4 => 4,
            -3 => 6,
            _ => 2,
        };
        Ok(FieldCtx { d, t, n, w })
    }

    pub fn disc(&self) -> i64 {
        self.d
    }

    /// Trace of ω.
    pub fn trace_omega(&self) -> i64 {
        self.t
    }

    /// Norm of ω.
    pub fn norm_omega(&self) -> i64 {
        self.n
    }

    /// Number of roots of unity in F.
    pub fn unit_count(&self) -> u32 {
        self.w
    }

    pub fn zero(&self) -> QuadElem {
        QuadElem::from_int(*self, 0)
    }

    pub fn one(&self) -> QuadElem {
        QuadElem::from_int(*self, 1)
    }

    pub fn omega(&self) -> QuadElem {
        QuadElem::new(*self, BigRational::zero(), BigRational::one())
    }

    pub fn elem(&self, x: i64, y: i64) -> QuadElem {
        QuadElem::new(*self, BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    /// √d expressed as 2ω − t.
    pub fn sqrt_d(&self) -> QuadElem {
        self.elem(-self.t, 2)
    }

    /// All units of 𝒪, starting with 1.
    pub fn units(&self) -> Vec<QuadElem> {
        match self.w {
            2 => vec![self.one(), self.elem(-1, 0)],
            4 => vec![self.one(), self.omega(), self.elem(-1, 0), -self.omega()],
            _ => {
                // ω = (1+√−3)/2 is a primitive sixth root of unity.
                let mut out = vec![self.one()];
                let w = self.omega();
                for _ in 1..6 {
                    let next = out.last().unwrap() * &w;
                    out.push(next);
                }
                out
            }
        }
    }

    /// Kronecker symbol (d | ℓ) for a rational prime ℓ.
    pub fn kronecker(&self, ell: u64) -> i32 {
        kronecker(self.d, ell)
    }
}

/// True iff `d` is a negative fundamental discriminant.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d >= -2 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

fn squarefree(mut m: u64) -> bool {
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        if m.is_multiple_of(p) {
            m /= p;
        }
        p += 1;
    }
    true
}

/// Kronecker symbol (d | ℓ) for prime ℓ.
pub fn kronecker(d: i64, ell: u64) -> i32 {
    if ell == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let r = d.rem_euclid(ell as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (ell - 1) / 2, ell) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker symbol (d | n) for n ≥ 1, multiplicative in n.
pub fn kronecker_symbol(d: i64, n: u64) -> i32 {
    super::prime::factor_u64(n).into_iter().map(|(ell, e)| kronecker(d, ell).pow(e)).product()
}

pub(crate) fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc = 1u128 % m128;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// An element x + yω of F with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    ctx: FieldCtx,
    x: BigRational,
    y: BigRational,
}

impl QuadElem {
    pub fn new(ctx: FieldCtx, x: BigRational, y: BigRational) -> Self {
        QuadElem { ctx, x, y }
    }

    pub fn from_int(ctx: FieldCtx, x: i64) -> Self {
        QuadElem::new(ctx, BigRational::from_integer(x.into()), BigRational::zero())
    }

    pub fn from_rational(ctx: FieldCtx, x: BigRational) -> Self {
        QuadElem::new(ctx, x, BigRational::zero())
    }

    pub fn from_bigints(ctx: FieldCtx, x: BigInt, y: BigInt) -> Self {
        QuadElem::new(ctx, BigRational::from_integer(x), BigRational::from_integer(y))
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// True iff the element lies in 𝒪.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Galois conjugate: ω̄ = t − ω.
    pub fn conj(&self) -> QuadElem {
        let t = BigRational::from_integer(self.ctx.t.into());
        QuadElem::new(self.ctx, &self.x + &t * &self.y, -self.y.clone())
    }

    /// Nm(x + yω) = x² + t·xy + n·y².
    pub fn norm(&self) -> BigRational {
        let t = BigRational::from_integer(self.ctx.t.into());
        let n = BigRational::from_integer(self.ctx.n.into());
        &self.x * &self.x + t * &self.x * &self.y + n * &self.y * &self.y
    }

    /// Trace x + x̄ = 2x + t·y.
    pub fn trace(&self) -> BigRational {
        let t = BigRational::from_integer(self.ctx.t.into());
        BigRational::from_integer(2.into()) * &self.x + t * &self.y
    }

    pub fn checked_add(&self, o: &QuadElem) -> Result<QuadElem, ArithError> {
        self.same_field(o)?;
        Ok(QuadElem::new(self.ctx, &self.x + &o.x, &self.y + &o.y))
    }

    pub fn checked_mul(&self, o: &QuadElem) -> Result<QuadElem, ArithError> {
        self.same_field(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub fn checked_div(&self, o: &QuadElem) -> Result<QuadElem, ArithError> {
        self.same_field(o)?;
        let inv = o.inv()?;
        Ok(self.mul_unchecked(&inv))
    }

    pub fn inv(&self) -> Result<QuadElem, ArithError> {
        let nm = self.norm();
        if nm.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.conj().scale(&nm.recip()))
    }

    pub fn scale(&self, r: &BigRational) -> QuadElem {
        QuadElem::new(self.ctx, &self.x * r, &self.y * r)
    }

    pub fn pow(&self, e: i64) -> Result<QuadElem, ArithError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.ctx.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }

    /// Least common denominator of both coordinates.
    pub fn denominator(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }

    /// Integer coordinates of `den·self`.
    pub fn scaled_coords(&self, den: &BigInt) -> (BigInt, BigInt) {
        let xs = &self.x * BigRational::from_integer(den.clone());
        let ys = &self.y * BigRational::from_integer(den.clone());
        debug_assert!(xs.is_integer() && ys.is_integer());
        (xs.to_integer(), ys.to_integer())
    }

    /// Complex embedding with ω ↦ t/2 + i·√|d|/2, as f64 (diagnostics only).
    pub fn to_c64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let x = self.x.to_f64().unwrap_or(f64::NAN);
        let y = self.y.to_f64().unwrap_or(f64::NAN);
        let s = ((-self.ctx.d) as f64).sqrt() / 2.0;
        (x + y * self.ctx.t as f64 / 2.0, y * s)
    }

    fn same_field(&self, o: &QuadElem) -> Result<(), ArithError> {
        if self.ctx != o.ctx {
            return Err(ArithError::MixedFields(self.ctx.d, o.ctx.d));
        }
        Ok(())
    }

    fn mul_unchecked(&self, o: &QuadElem) -> QuadElem {
        let t = BigRational::from_integer(self.ctx.t.into());
        let n = BigRational::from_integer(self.ctx.n.into());
        let yy = &self.y * &o.y;
        let x = &self.x * &o.x - &n * &yy;
        let y = &self.x * &o.y + &o.x * &self.y + t * yy;
        QuadElem::new(self.ctx, x, y)
    }

    pub fn abs_coords_bound(&self) -> BigRational {
        self.x.abs().max(self.y.abs())
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let w = "w";
        if self.x.is_zero() {
            return write!(f, "{}*{}", self.y, w);
        }
        if self.y.is_negative() {
            write!(f, "{} - {}*{}", self.x, -self.y.clone(), w)
        } else {
            write!(f, "{} + {}*{}", self.x, self.y, w)
        }
    }
}

// Operator impls panic on mixed fields; use the `checked_*` methods at API boundaries.
macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $m(self, o: &QuadElem) -> QuadElem {
                assert_eq!(self.ctx, o.ctx, "mixed fields");
                let f: fn(&QuadElem, &QuadElem) -> QuadElem = $body;
                f(self, o)
            }
        }
        impl $tr<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, o: QuadElem) -> QuadElem {
                (&self).$m(&o)
            }
        }
        impl $tr<&QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $m(self, o: &QuadElem) -> QuadElem {
                (&self).$m(o)
            }
        }
    };
}

binop!(Add, add, |a, b| QuadElem::new(a.ctx, &a.x + &b.x, &a.y + &b.y));
binop!(Sub, sub, |a, b| QuadElem::new(a.ctx, &a.x - &b.x, &a.y - &b.y));
binop!(Mul, mul, |a, b| a.mul_unchecked(b));

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(self.ctx, -self.x, -self.y)
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_half_integral_generator() {
        let k = FieldCtx::new(-67).unwrap();
        // (1+√−67)/2 is ω itself.
        assert_eq!(k.omega().norm(), BigRational::from_integer(17.into()));
    }

    #[test]
    fn omega_times_conjugate_d20() {
        let k = FieldCtx::new(-20).unwrap();
        let w = k.omega();
        assert_eq!(&w * &w.conj(), k.elem(5, 0));
    }

    #[test]
    fn sqrt_d_is_anti_invariant() {
        for d in [-3, -4, -7, -8, -20, -67, -163] {
            let k = FieldCtx::new(d).unwrap();
            let s = k.sqrt_d();
            assert_eq!(s.conj(), -s.clone());
            assert_eq!(&s * &s, k.elem(d, 0));
        }
    }

    #[test]
    fn fundamental_discriminants() {
        assert!(is_fundamental_discriminant(-3));
        assert!(is_fundamental_discriminant(-4));
        assert!(is_fundamental_discriminant(-8));
        assert!(is_fundamental_discriminant(-20));
        assert!(!is_fundamental_discriminant(-12));
        assert!(!is_fundamental_discriminant(-16));
        assert!(!is_fundamental_discriminant(-27));
        assert!(!is_fundamental_discriminant(-1));
        assert!(FieldCtx::new(-5).is_err());
    }

    #[test]
    fn units_have_norm_one() {
        for d in [-3, -4, -7] {
            let k = FieldCtx::new(d).unwrap();
            let us = k.units();
            assert_eq!(us.len() as u32, k.unit_count());
            for u in &us {
                assert!(u.norm().is_one());
            }
        }
    }

    #[test]
    fn division_and_mixed_fields() {
        let k = FieldCtx::new(-20).unwrap();
        let a = k.elem(3, 1);
        assert_eq!(a.checked_div(&k.zero()), Err(ArithError::DivisionByZero));
        let b = FieldCtx::new(-7).unwrap().elem(1, 1);
        assert!(matches!(a.checked_mul(&b), Err(ArithError::MixedFields(..))));
        let q = a.checked_div(&k.elem(1, 1)).unwrap();
        assert_eq!(&q * &k.elem(1, 1), a);
    }
}
