//! Hecke eigenvalues of the Eisenstein class: T_v = φ₂(P) + Nm(P)·φ₁(P) and
//! S_v = (φ₁φ₂)(P), with the generators T_v − φ₁(P)·Nm(P) − φ₂(P).

use num_bigint::BigInt;
use num_rational::BigRational;
use rug::Float;
use serde::Serialize;

use crate::arith::{ideal_val, PrimeIdeal, QuadElem};
use crate::characters::{AlgValue, HeckeChar};
use crate::numeric::Complex;

use super::EisError;

/// Working precision for the numeric eigenvalue checks.
const PREC: u32 = 256;
const TOL_LOG2: i32 = -200;

#[derive(Clone, Debug, Serialize)]
pub struct HeckeEntry {
    pub prime: String,
    pub norm: u64,
    pub phi1_value: String,
    pub phi2_value: String,
    pub s_eigenvalue: String,
    pub t_approx: (f64, f64),
    pub s_approx: (f64, f64),
    pub t_abs: f64,
    /// 2·Nm^{1/2}·(1 + Nm^{−1/2}).
    pub t_bound: f64,
    pub t_within_bound: bool,
    /// |S_v|² = Nm^{−(w₁+w₂)} exactly, with w_i the weights of φ_i.
    pub s_central: bool,
    pub eis_ideal_generator: String,
    /// Whether T_v = T_v̄, for split v with v̄ outside the level.
    pub conjugate_agrees: Option<bool>,
    #[serde(skip)]
    pub t_value: Complex,
    #[serde(skip)]
    pub s_value: AlgValue,
}

fn t_value(phi1: &HeckeChar, phi2: &HeckeChar, v: &PrimeIdeal) -> Result<(AlgValue, AlgValue, Complex), EisError> {
    let a = phi1.eval_prime(v)?;
    let b = phi2.eval_prime(v)?;
    let n = Float::with_val(PREC, v.norm());
    let t = &b.embed(PREC) + &a.embed(PREC).scale(&n);
    Ok((a, b, t))
}

fn close(x: &Complex, y: &Complex) -> bool {
    x.dist(y) < Float::with_val(PREC, Float::i_exp(1, TOL_LOG2))
}

pub fn eis_hecke_data(phi1: &HeckeChar, phi2: &HeckeChar, primes: &[PrimeIdeal]) -> Result<Vec<HeckeEntry>, EisError> {
    let w1 = phi1.weight();
    let w2 = phi2.weight();
    let mut out = Vec::with_capacity(primes.len());
    for v in primes {
        for m in [phi1.modulus(), phi2.modulus()] {
            if ideal_val(m, v) != 0 {
                return Err(EisError::RamifiedPrime(v.to_string()));
            }
        }
        let (a, b, t) = t_value(phi1, phi2, v)?;
        let s = a.mul(&b);
        let n = v.norm() as f64;
        let (tr, ti) = t.to_f64();
        let t_abs = tr.hypot(ti);
        let t_bound = 2.0 * n.sqrt() * (1.0 + 1.0 / n.sqrt());
        let nm = BigRational::from_integer(BigInt::from(v.norm()));
        let e = -(w1 + w2);
        let r = if e >= 0 { nm.pow(e as i32) } else { num_traits::Inv::inv(nm).pow((-e) as i32) };
        let s_central = s.mul(&s.conj()).eq_exact(&AlgValue::from_elem(QuadElem::from_rational(v.ideal().ctx(), r)));
        let vbar = v.conj();
        let conjugate_agrees = if v.is_self_conjugate() || !phi1.is_coprime(vbar.ideal()) || !phi2.is_coprime(vbar.ideal()) {
            None
        } else {
            Some(close(&t, &t_value(phi1, phi2, &vbar)?.2))
        };
        out.push(HeckeEntry {
            prime: v.to_string(),
            norm: v.norm(),
            phi1_value: a.to_string(),
            phi2_value: b.to_string(),
            s_eigenvalue: s.to_string(),
            t_approx: (tr, ti),
            s_approx: s.to_c64(),
            t_abs,
            t_bound,
            t_within_bound: t_abs <= t_bound,
            s_central,
            eis_ideal_generator: format!("T_{v} - {}*({a}) - ({b})", v.norm()),
            conjugate_agrees,
            t_value: t,
            s_value: s,
        });
    }
    Ok(out)
}
