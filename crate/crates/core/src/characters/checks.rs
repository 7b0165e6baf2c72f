//! Conjugation symmetry, the factorization χ = φ₁/φ₂, and Frobenius
//! comparisons modulo p.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::{factor_prime, ideal_val, primes_up_to_norm, FracIdeal, PrimeIdeal, QuadElem};

use super::algvalue::AlgValue;
use super::hecke::HeckeChar;
use super::CharError;

/// One test ideal in a symmetry comparison.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryEntry {
    pub ideal: String,
    /// χ(𝔞̄) as an embedded complex number.
    pub chi_c: (f64, f64),
    /// conj(χ(𝔞)).
    pub chi_bar: (f64, f64),
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub entries: Vec<SymmetryEntry>,
    pub c_equals_bar: bool,
    /// The hypothesis χ^c = χ̄ needed before an anticyclotomic twist can exist.
    pub anticyclotomic_twistable: bool,
}

/// Compare χ^c(𝔞) := χ(𝔞̄) with conj(χ(𝔞)) on class group generators and 20 small primes.
pub fn char_symmetry(chi: &HeckeChar) -> Result<SymmetryReport, CharError> {
    let ctx = chi.ctx();
    let ok = |i: &FracIdeal| chi.is_coprime(i) && chi.is_coprime(&i.conj());
    let mut tests: Vec<FracIdeal> = Vec::new();
    let cl = crate::classgrp::ClassGroup::new(ctx);
    for f in cl.gens() {
        let mut i = f.to_ideal(ctx);
        if !ok(&i) {
            // Move to a coprime ideal in the same class.
            let bound = 2000;
            let target = cl.class_of(&i);
            if let Some(p) = primes_up_to_norm(ctx, bound).into_iter().find(|p| ok(p.ideal()) && cl.class_of(p.ideal()) == target) {
                i = p.ideal().clone();
            } else {
                continue;
            }
        }
        tests.push(i);
    }
    let mut bound = 64;
    loop {
        let primes: Vec<PrimeIdeal> = primes_up_to_norm(ctx, bound).into_iter().filter(|p| ok(p.ideal())).take(20).collect();
        if primes.len() == 20 || bound > 1 << 16 {
            tests.extend(primes.into_iter().map(|p| p.ideal().clone()));
            break;
        }
        bound *= 2;
    }
    let mut entries = Vec::new();
    for i in &tests {
        let c = chi.eval(&i.conj())?;
        let b = chi.eval(i)?.conj();
        entries.push(SymmetryEntry { ideal: i.to_string(), chi_c: c.to_c64(), chi_bar: b.to_c64(), equal: c.eq_exact(&b) });
    }
    let c_equals_bar = entries.iter().all(|e| e.equal);
    Ok(SymmetryReport { entries, c_equals_bar, anticyclotomic_twistable: c_equals_bar })
}

/// χ = φ₁/φ₂ with φ₁ of type (1, 0) and modulus 𝔮, and φ₂ = φ₁·χ⁻¹.
pub fn phi_factor(chi: &Arc<HeckeChar>, q: &PrimeIdeal, p: u64) -> Result<(Arc<HeckeChar>, Arc<HeckeChar>), CharError> {
    if !chi.is_unramified() || chi.inf_type() != (2, 0) {
        return Err(CharError::NotUnramifiedWeightTwo);
    }
    let w = chi.ctx().unit_count() as u64;
    if q.is_self_conjugate() {
        let n = q.norm() % p;
        if n == 1 || n == p - 1 {
            return Err(CharError::BadAuxPrime(format!("Nm(q) = {} is ±1 mod {p}", q.norm())));
        }
    } else if q.ell() <= w || (q.ell() - 1).is_multiple_of(p) {
        return Err(CharError::BadAuxPrime(format!("q = {} fails q > {w} and p ∤ q-1", q.ell())));
    }
    let phi1 = Arc::new(HeckeChar::build(q.ideal(), (1, 0), 0)?);
    let phi2 = Arc::new(HeckeChar::product(&[(phi1.clone(), 1), (chi.clone(), -1)])?);
    // φ₁/φ₂ = χ on small primes away from 𝔮.
    let tests: Vec<PrimeIdeal> = primes_up_to_norm(chi.ctx(), 400).into_iter().filter(|v| ideal_val(v.ideal(), q) == 0).take(20).collect();
    for v in &tests {
        let lhs = phi1.eval_prime(v)?.div(&phi2.eval_prime(v)?)?;
        if !lhs.eq_exact(&chi.eval_prime(v)?) {
            return Err(CharError::Internal("phi1/phi2 differs from chi"));
        }
    }
    Ok((phi1, phi2))
}

/// Whether ρ(Frob_v) ≢ ε(Frob_v) mod p for ρ = χ_𝔭·ε.
pub fn frob_tame_check(chi: &HeckeChar, p: u64, v: &PrimeIdeal) -> Result<bool, CharError> {
    if !chi.is_coprime(v.ideal()) {
        return Err(CharError::RamifiedAtV);
    }
    if v.ell() == p {
        return Err(CharError::VDividesP);
    }
    let n = v.norm();
    if v.is_self_conjugate() {
        let r = n % p;
        return Ok(r != 1 && r != p - 1);
    }
    let val = chi.eval_prime(v)?;
    let pp = factor_prime(chi.ctx(), p)?.remove(0).0;
    let nm = QuadElem::from_int(chi.ctx(), n as i64);
    let congruent = |x: &QuadElem, y: &QuadElem| {
        let diff = x - y;
        diff.is_zero() || pp.val_elem(&diff).map(|k| k > 0).unwrap_or(false)
    };
    match val.as_field_elem() {
        Some(x) => Ok(!congruent(&(&x * &nm), &nm)),
        None => {
            // χ(P) ≢ 1 is implied by χ(P)^M ≢ 1; otherwise report a failure.
            let (_, xm) = val.power_into_field();
            Ok(!congruent(&xm, &chi.ctx().one()))
        }
    }
}

/// Conjugate-place comparison of a character: χ(P) vs χ(P̄).
pub fn conjugate_places_agree(chi: &HeckeChar, v: &PrimeIdeal) -> Result<bool, CharError> {
    let a: AlgValue = chi.eval_prime(v)?;
    let b = chi.eval_prime(&v.conj())?;
    Ok(a.eq_exact(&b))
}
