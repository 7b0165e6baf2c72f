//! Weierstrass curves over ℚ: invariants, minimal (c4, c6), and the real
//! period of the Néron differential.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::arith::{is_prime, kronecker_symbol, FieldCtx};
use crate::classgrp::ClassGroup;
use crate::numeric::{bigint_to_integer, bits_for_digits, pi};

use super::recon::reconstruct;
use super::LfunError;

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
    pub a4: BigInt,
    pub a6: BigInt,
}

impl Curve {
    pub fn new(a: [i64; 5]) -> Curve {
        let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
        Curve { a1, a2, a3, a4, a6 }
    }

    pub fn b_invariants(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = a1 * a3 + 2 * a4;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        (b2, b4, b6, b8)
    }

    pub fn c4_c6(&self) -> (BigInt, BigInt) {
        let (b2, b4, b6, _) = self.b_invariants();
        let c4 = &b2 * &b2 - 24 * &b4;
        let c6 = -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * &b6;
        (c4, c6)
    }

    pub fn discriminant(&self) -> BigInt {
        let (c4, c6) = self.c4_c6();
        (&c4 * &c4 * &c4 - &c6 * &c6) / 1728
    }

    pub fn j_invariant(&self) -> Result<BigRational, LfunError> {
        let disc = self.discriminant();
        if disc.is_zero() {
            return Err(LfunError::SingularCurve);
        }
        let (c4, _) = self.c4_c6();
        Ok(BigRational::new(&c4 * &c4 * &c4, disc))
    }

    /// The model obtained from x → u²x, y → u³y (coefficients a_i·u^i).
    pub fn scaled(&self, u: i64) -> Curve {
        let u = BigInt::from(u);
        Curve { a1: &self.a1 * &u, a2: &self.a2 * u.pow(2u32), a3: &self.a3 * u.pow(3u32), a4: &self.a4 * u.pow(4u32), a6: &self.a6 * u.pow(6u32) }
    }

    /// The model obtained from x → x + r, y → y + s·x + t.
    pub fn translated(&self, r: i64, s: i64, t: i64) -> Curve {
        let (r, s, t) = (BigInt::from(r), BigInt::from(s), BigInt::from(t));
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        Curve {
            a1: a1 + 2 * &s,
            a2: a2 - &s * a1 + 3 * &r - &s * &s,
            a3: a3 + &r * a1 + 2 * &t,
            a4: a4 - &s * a3 + 2 * &r * a2 - (&t + &r * &s) * a1 + 3 * &r * &r - 2 * &s * &t,
            a6: a6 + &r * a4 + &r * &r * a2 + &r * &r * &r - &t * a3 - &t * &t - &r * &t * a1,
        }
    }
}

impl FromStr for Curve {
    type Err = LfunError;

    /// Parses "a1,a2,a3,a4,a6" (optionally in brackets).
    fn from_str(s: &str) -> Result<Curve, LfunError> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(LfunError::BadCurve(format!("expected 5 coefficients, found {}", parts.len())));
        }
        let mut v = Vec::with_capacity(5);
        for p in parts {
            let n: BigInt = p.parse().map_err(|_| LfunError::BadCurve(format!("not an integer: {p:?}")))?;
            v.push(n);
        }
        let mut it = v.into_iter();
        let mut next = || it.next().unwrap();
        Ok(Curve { a1: next(), a2: next(), a3: next(), a4: next(), a6: next() })
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{},{}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

fn val(n: &BigInt, p: u64) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let p = BigInt::from(p);
    let mut k = 0;
    let mut m = n.clone();
    while (&m % &p).is_zero() {
        m /= &p;
        k += 1;
    }
    k
}

/// Kraus' conditions for (c4, c6) to come from an integral model.
pub fn kraus_ok(c4: &BigInt, c6: &BigInt) -> bool {
    let d = c4 * c4 * c4 - c6 * c6;
    if d.is_zero() || !(&d % BigInt::from(1728)).is_zero() {
        return false;
    }
    if val(c6, 3) == 2 {
        return false;
    }
    let c6_mod4 = c6.mod_floor(&BigInt::from(4));
    if c6_mod4 == BigInt::from(3) {
        return true;
    }
    let c6_mod32 = c6.mod_floor(&BigInt::from(32));
    (c4.is_zero() || val(c4, 2) >= 4) && (c6_mod32.is_zero() || c6_mod32 == BigInt::from(8))
}

/// (c4, c6) of a global minimal model.
pub fn minimal_c4_c6(curve: &Curve) -> Result<(BigInt, BigInt), LfunError> {
    let (mut c4, mut c6) = curve.c4_c6();
    let disc = curve.discriminant();
    if disc.is_zero() {
        return Err(LfunError::SingularCurve);
    }
    // u^12 divides 1728·Δ, which bounds the primes to try.
    let bound = (disc.abs() * 1728u32).to_f64().unwrap_or(f64::MAX).powf(1.0 / 12.0).ceil() as u64 + 1;
    for ell in (2..=bound).filter(|&l| is_prime(l)) {
        let l4 = BigInt::from(ell).pow(4u32);
        let l6 = BigInt::from(ell).pow(6u32);
        while (&c4 % &l4).is_zero() && (&c6 % &l6).is_zero() {
            let (n4, n6) = (&c4 / &l4, &c6 / &l6);
            if !kraus_ok(&n4, &n6) {
                break;
            }
            c4 = n4;
            c6 = n6;
        }
    }
    Ok((c4, c6))
}

/// Least positive real period of dx/(2y + a1x + a3) on the given model.
pub fn model_period(curve: &Curve, digits: u32) -> Result<Float, LfunError> {
    let (c4, c6) = curve.c4_c6();
    period_from_c4_c6(&c4, &c6, digits)
}

/// Least positive real period of the Néron differential of a global minimal model.
pub fn neron_period(curve: &Curve, digits: u32) -> Result<Float, LfunError> {
    let (c4, c6) = minimal_c4_c6(curve)?;
    period_from_c4_c6(&c4, &c6, digits)
}

/// Real period of y² = 4x³ − (c4/12)x − c6/216 with respect to dx/y.
pub fn period_from_c4_c6(c4: &BigInt, c6: &BigInt, digits: u32) -> Result<Float, LfunError> {
    let disc = c4 * c4 * c4 - c6 * c6;
    if disc.is_zero() {
        return Err(LfunError::SingularCurve);
    }
    let prec = bits_for_digits(digits);
    let wp = prec + 64 + (c4.bits().max(c6.bits()) as u32);
    let g2 = Float::with_val(wp, bigint_to_integer(c4)) / 12u32;
    let g3 = Float::with_val(wp, bigint_to_integer(c6)) / 216u32;
    // Depressed cubic x³ + p·x + q with p = −g2/4, q = −g3/4.
    let p = -Float::with_val(wp, &g2 / 4u32);
    let q = -Float::with_val(wp, &g3 / 4u32);
    let omega = if disc.is_positive() {
        let mut roots = three_real_roots(&p, &q, wp);
        roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let (e1, e2, e3) = (&roots[0], &roots[1], &roots[2]);
        let a = Float::with_val(wp, e1 - e3).sqrt();
        let b = Float::with_val(wp, e1 - e2).sqrt();
        pi(wp) / a.agm(&b)
    } else {
        let e1 = one_real_root(&p, &q, wp);
        let a = Float::with_val(wp, &e1 * 3u32);
        let b = (Float::with_val(wp, e1.clone().pow(2u32) * 3u32) - Float::with_val(wp, &g2 / 4u32)).sqrt();
        let x = Float::with_val(wp, b.clone().sqrt() * 2u32);
        let y = Float::with_val(wp, Float::with_val(wp, &b * 2u32) + &a).sqrt();
        Float::with_val(wp, pi(wp) * 2u32) / x.agm(&y)
    };
    Ok(Float::with_val(prec, omega))
}

fn polish(x: Float, p: &Float, q: &Float, wp: u32) -> Float {
    let mut x = x;
    for _ in 0..4 {
        let f = Float::with_val(wp, x.clone().pow(3u32)) + Float::with_val(wp, p * &x) + q;
        let df = Float::with_val(wp, x.clone().pow(2u32) * 3u32) + p;
        if df.is_zero() {
            break;
        }
        x -= f / df;
    }
    x
}

fn three_real_roots(p: &Float, q: &Float, wp: u32) -> Vec<Float> {
    let m = Float::with_val(wp, -Float::with_val(wp, p / 3u32)).sqrt() * 2u32;
    let arg = Float::with_val(wp, q * 3u32) / Float::with_val(wp, p * 2u32) * Float::with_val(wp, Float::with_val(wp, -3) / p).sqrt();
    let arg = arg.clamp(&-1, &1);
    let theta = arg.acos() / 3u32;
    (0..3u32)
        .map(|k| {
            let shift = Float::with_val(wp, pi(wp) * 2u32) * k / 3u32;
            let r = Float::with_val(wp, &m * Float::with_val(wp, &theta - shift).cos());
            polish(r, p, q, wp)
        })
        .collect()
}

fn one_real_root(p: &Float, q: &Float, wp: u32) -> Float {
    let disc = Float::with_val(wp, q.clone().pow(2u32) / 4u32) + Float::with_val(wp, p.clone().pow(3u32) / 27u32);
    let sd = disc.sqrt();
    let half_q = Float::with_val(wp, q / 2u32);
    let u = Float::with_val(wp, &sd - &half_q).cbrt();
    let v = Float::with_val(wp, -Float::with_val(wp, &sd + &half_q)).cbrt();
    polish(u + v, p, q, wp)
}

/// Chowla–Selberg comparison of a period with √π·(Π_a Γ(a/|d|)^{χ_d(a)})^{w/4h}.
#[derive(Clone, Debug, Serialize)]
pub struct ChowlaSelberg {
    pub ratio: String,
    /// Smallest k with ratio^k recognized as a rational of small height.
    pub power: Option<u32>,
    pub power_value: Option<String>,
}

pub fn chowla_selberg_crosscheck(omega: &Float, d: i64, digits: u32) -> Result<ChowlaSelberg, LfunError> {
    let ctx = FieldCtx::new(d)?;
    let h = ClassGroup::new(ctx).h();
    let w = ctx.unit_count();
    let prec = bits_for_digits(digits);
    let q = d.unsigned_abs();
    let mut log_prod = Float::with_val(prec, 0);
    for a in 1..q {
        let k = kronecker_symbol(d, a);
        if k == 0 {
            continue;
        }
        let g = Float::with_val(prec, Float::with_val(prec, a) / q).ln_gamma();
        log_prod += g * k;
    }
    let expo = Float::with_val(prec, w) / (4 * h as u32);
    let cs = Float::with_val(prec, log_prod * expo).exp() * Float::with_val(prec, Constant::Pi).sqrt();
    let ratio = Float::with_val(prec, omega / &cs);
    let tol = Float::with_val(prec, Float::i_exp(1, -((prec as i32) * 2 / 3)));
    let mut found = None;
    for k in [1u32, 2, 3, 4, 6, 8, 12, 24] {
        let rk = Float::with_val(prec, ratio.clone().pow(k));
        if let Some(r) = reconstruct(&rk, &BigInt::from(1_000_000u32), &tol) {
            found = Some((k, r));
            break;
        }
    }
    Ok(ChowlaSelberg {
        ratio: ratio.to_string_radix(10, Some(digits.min(40) as usize)),
        power: found.as_ref().map(|f| f.0),
        power_value: found.map(|f| f.1.to_string()),
    })
}

/// True iff j(E) equals j(𝒪_F) for a class-number-one discriminant d.
pub fn has_cm_by_maximal_order(curve: &Curve, d: i64) -> Result<bool, LfunError> {
    let j = curve.j_invariant()?;
    let expected: Option<i64> = match d {
        -3 => Some(0),
        -4 => Some(1728),
        -7 => Some(-3375),
        -8 => Some(8000),
        -11 => Some(-32768),
        -19 => Some(-884736),
        -43 => Some(-884736000),
        -67 => Some(-147197952000),
        -163 => Some(-262537412640768000),
        _ => None,
    };
    Ok(match expected {
        Some(e) => j == BigRational::from_integer(BigInt::from(e)),
        None => false,
    })
}
