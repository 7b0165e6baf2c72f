//! Multiprecision real and complex helpers over MPFR floats.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use rug::float::Constant;
use rug::{Float, Integer};

/// Working precision in bits for a target number of decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

pub fn float(prec: u32, x: f64) -> Float {
    Float::with_val(prec, x)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn bigint_to_integer(x: &BigInt) -> Integer {
    Integer::from_str_radix(&x.to_str_radix(16), 16).expect("hex digits parse")
}

pub fn integer_to_bigint(x: &Integer) -> BigInt {
    BigInt::parse_bytes(x.to_string_radix(16).as_bytes(), 16).expect("hex digits parse")
}

pub fn rational_to_float(prec: u32, x: &BigRational) -> Float {
    let n = bigint_to_integer(x.numer());
    let d = bigint_to_integer(x.denom());
    Float::with_val(prec, n) / Float::with_val(prec, d)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Float) -> Self {
        let p = re.prec();
        Complex { re, im: Float::with_val(p, 0) }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::real(Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> Self {
        Complex::real(Float::with_val(prec, 1))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// e^{iθ}.
    pub fn cis(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        Complex::new(c, s)
    }

    /// e^{2πi·num/den}.
    pub fn root_of_unity(prec: u32, num: i64, den: u64) -> Self {
        let theta = pi(prec) * 2u32 * Float::with_val(prec, num) / Float::with_val(prec, den);
        Complex::cis(&theta)
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        Float::with_val(self.prec(), &self.re * &self.re) + Float::with_val(self.prec(), &self.im * &self.im)
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn scale(&self, r: &Float) -> Self {
        Complex::new(Float::with_val(self.prec(), &self.re * r), Float::with_val(self.prec(), &self.im * r))
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        Complex::new(Float::with_val(self.prec(), &self.re / &n), -Float::with_val(self.prec(), &self.im / &n))
    }

    pub fn div(&self, o: &Complex) -> Self {
        self * &o.inv()
    }

    pub fn powi(&self, e: i64) -> Self {
        let mut acc = Complex::one(self.prec());
        let mut b = if e < 0 { self.inv() } else { self.clone() };
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        acc
    }

    /// Principal n-th root.
    pub fn principal_root(&self, n: u64) -> Self {
        let p = self.prec();
        let r = self.abs();
        if r.is_zero() {
            return Complex::zero(p);
        }
        let rn = r.ln() / Float::with_val(p, n);
        let mag = rn.exp();
        let th = self.arg() / Float::with_val(p, n);
        Complex::cis(&th).scale(&mag)
    }

    /// Distance to another complex number.
    pub fn dist(&self, o: &Complex) -> Float {
        (self - o).abs()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re + &o.re), Float::with_val(p, &self.im + &o.im))
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re - &o.re), Float::with_val(p, &self.im - &o.im))
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        let p = self.prec();
        let rr = Float::with_val(p, &self.re * &o.re);
        let ii = Float::with_val(p, &self.im * &o.im);
        let ri = Float::with_val(p, &self.re * &o.im);
        let ir = Float::with_val(p, &self.im * &o.re);
        Complex::new(rr - ii, ri + ir)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re.clone(), -self.im.clone())
    }
}

/// Complex embedding of x + yω with ω ↦ t/2 + i·√|d|/2.
pub fn embed(prec: u32, z: &crate::arith::QuadElem) -> Complex {
    let ctx = z.ctx();
    let x = rational_to_float(prec, z.x());
    let y = rational_to_float(prec, z.y());
    let half_t = Float::with_val(prec, ctx.trace_omega()) / 2u32;
    let s = Float::with_val(prec, -ctx.disc()).sqrt() / 2u32;
    let re = x + Float::with_val(prec, &y * &half_t);
    let im = y * s;
    Complex::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_and_inverses() {
        let p = 200;
        let z = Complex::new(float(p, -3.0), float(p, 0.0));
        let r = z.principal_root(2);
        assert!((r.re.to_f64()).abs() < 1e-40);
        assert!((r.im.to_f64() - 3f64.sqrt()).abs() < 1e-15);
        let w = Complex::root_of_unity(p, 1, 6).powi(6);
        assert!(w.dist(&Complex::one(p)).to_f64() < 1e-50);
        let x = BigRational::new(BigInt::from(-7), BigInt::from(3));
        assert!((rational_to_float(p, &x).to_f64() + 7.0 / 3.0).abs() < 1e-15);
    }
}
