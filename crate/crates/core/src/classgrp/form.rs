//! Positive definite binary quadratic forms and their composition.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{FieldCtx, FracIdeal};

use super::ClassGroupError;

/// The form Ax² + Bxy + Cy².
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    // Returns (u, v, g) with u·a + v·b = g ≥ 0.
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-s0, -t0, -r0)
    } else {
        (s0, t0, r0)
    }
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// The identity form of discriminant d.
    pub fn principal(d: i64) -> Self {
        if d.rem_euclid(4) == 0 {
            QuadForm::new(1, 0, -d / 4)
        } else {
            QuadForm::new(1, 1, (1 - d) / 4)
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        a > 0 && b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    pub fn reduce(&self) -> QuadForm {
        let d = self.disc() as i128;
        let (mut a, mut b) = (self.a as i128, self.b as i128);
        let mut c;
        loop {
            let k = (a - b).div_euclid(2 * a);
            b += 2 * a * k;
            c = (b * b - d) / (4 * a);
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            break;
        }
        QuadForm::new(a as i64, b as i64, c as i64)
    }

    pub fn inverse(&self) -> QuadForm {
        QuadForm::new(self.a, -self.b, self.c).reduce()
    }

    /// Gaussian composition followed by reduction.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm, ClassGroupError> {
        if self.disc() != other.disc() {
            return Err(ClassGroupError::MixedDiscriminants(self.disc(), other.disc()));
        }
        let (f1, f2) = if self.a > other.a { (other, self) } else { (self, other) };
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (y1, d) = if a2 % a1 == 0 {
            (0, a1)
        } else {
            let (u, _, g) = ext_gcd(a2, a1);
            (u, g)
        };
        let (x2, y2, d1) = if s % d == 0 {
            (0, -1, d)
        } else {
            let (x, y, g) = ext_gcd(s, d);
            (x, -y, g)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let disc = self.disc() as i128;
        let c3 = (b3 * b3 - disc) / (4 * a3);
        Ok(QuadForm::new(a3 as i64, b3 as i64, c3 as i64).reduce())
    }

    /// The ideal (A, (−B + √d)/2).
    pub fn to_ideal(&self, ctx: FieldCtx) -> FracIdeal {
        let t = ctx.trace_omega();
        let b = (-self.b - t).div_euclid(2).rem_euclid(self.a);
        FracIdeal::from_hnf(ctx, BigInt::from(1), BigInt::from(self.a), BigInt::from(b), BigInt::from(1)).expect("form ideal is in HNF")
    }

    /// The reduced form attached to the class of a fractional ideal.
    pub fn from_ideal(i: &FracIdeal) -> QuadForm {
        let ctx = i.ctx();
        let (a, b) = i.primitive_part();
        let bf = BigInt::from(-2) * b - ctx.trace_omega();
        let cf = (&bf * &bf - ctx.disc()) / (BigInt::from(4) * &a);
        reduce_big(a, bf, cf)
    }
}

/// Reduction with arbitrary-size coefficients; reduced forms fit in i64.
fn reduce_big(mut a: BigInt, mut b: BigInt, mut c: BigInt) -> QuadForm {
    let d = &b * &b - BigInt::from(4) * &a * &c;
    loop {
        let two_a = BigInt::from(2) * &a;
        let k = (&a - &b).div_floor(&two_a);
        b += &two_a * k;
        c = (&b * &b - &d) / (BigInt::from(4) * &a);
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b < BigInt::from(0) {
            b = -b;
        }
        break;
    }
    let small = |x: BigInt| i64::try_from(x).expect("reduced form coefficients are bounded by |d|");
    QuadForm::new(small(a), small(b), small(c))
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All reduced primitive forms of discriminant d, principal form first.
pub fn reduced_forms(d: i64) -> Vec<QuadForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm::new(a, b, num / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    out
}
