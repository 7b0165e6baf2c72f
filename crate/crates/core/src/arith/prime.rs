//! Prime ideals, splitting of rational primes, valuations and factorization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::{pow_mod, FieldCtx, QuadElem};
use super::ideal::FracIdeal;
use super::ArithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// A nonzero prime of 𝒪 lying over the rational prime `ell`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    ell: u64,
    split: SplitType,
    ideal: FracIdeal,
    /// Root r of x² − tx + n mod ℓ with P = (ℓ, ω − r); None when inert.
    root: Option<u64>,
}

impl PrimeIdeal {
    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn split_type(&self) -> SplitType {
        self.split
    }

    pub fn ideal(&self) -> &FracIdeal {
        &self.ideal
    }

    pub fn residue_degree(&self) -> u32 {
        if self.split == SplitType::Inert {
            2
        } else {
            1
        }
    }

    /// Ramification index over ℓ.
    pub fn ram_index(&self) -> u32 {
        if self.split == SplitType::Ramified {
            2
        } else {
            1
        }
    }

    pub fn norm(&self) -> u64 {
        self.ell.pow(self.residue_degree())
    }

    pub fn root(&self) -> Option<u64> {
        self.root
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.split != SplitType::Split
    }

    pub fn conj(&self) -> PrimeIdeal {
        match (self.split, self.root) {
            (SplitType::Split, Some(r)) => {
                let ctx = self.ideal.ctx();
                let t = ctx.trace_omega().rem_euclid(self.ell as i64) as u64;
                let r2 = (t + self.ell - r) % self.ell;
                PrimeIdeal::from_root(ctx, self.ell, SplitType::Split, r2)
            }
            _ => self.clone(),
        }
    }

    fn from_root(ctx: FieldCtx, ell: u64, split: SplitType, r: u64) -> PrimeIdeal {
        let ideal = FracIdeal::from_gens(ctx, &[ctx.elem(ell as i64, 0), ctx.elem(-(r as i64), 1)]).expect("nonzero generators");
        PrimeIdeal { ell, split, ideal, root: Some(r) }
    }

    /// Valuation of an element.
    pub fn val_elem(&self, z: &QuadElem) -> Result<i64, ArithError> {
        if z.is_zero() {
            return Err(ArithError::ZeroIdeal);
        }
        Ok(ideal_val(&FracIdeal::principal(z)?, self))
    }

    /// Reduction of an integral element z into 𝒪/P when P has degree one.
    pub fn reduce_degree_one(&self, z: &QuadElem) -> Option<u64> {
        let r = self.root?;
        let ell = BigInt::from(self.ell);
        let v = z.x() + z.y() * BigRational::from_integer(r.into());
        let num = v.numer().mod_floor(&ell);
        let den = v.denom().mod_floor(&ell);
        if den.is_zero() {
            return None;
        }
        let inv = pow_mod(den.to_u64()?, self.ell - 2, self.ell);
        Some(num.to_u64()? * inv % self.ell)
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.split {
            SplitType::Inert => write!(f, "({})", self.ell),
            _ => write!(f, "({}, w - {})", self.ell, self.root.unwrap_or(0)),
        }
    }
}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Primality by trial division (inputs are small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Factorization of a positive integer by trial division.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factors of a nonzero big integer; fails if a cofactor exceeds u64.
pub(crate) fn prime_divisors(n: &BigInt) -> Result<Vec<u64>, ArithError> {
    let mut m = n.magnitude().clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while m > One::one() {
        if let Some(small) = m.to_u64() {
            for (q, _) in factor_u64(small) {
                if !out.contains(&q) {
                    out.push(q);
                }
            }
            break;
        }
        if p > 10_000_000 {
            return Err(ArithError::FactorizationTooLarge);
        }
        let bp = num_bigint::BigUint::from(p);
        if (&m % &bp).is_zero() {
            out.push(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out.sort_unstable();
    Ok(out)
}

fn roots_mod(ctx: FieldCtx, ell: u64) -> Vec<u64> {
    let t = ctx.trace_omega().rem_euclid(ell as i64) as u64;
    let n = ctx.norm_omega().rem_euclid(ell as i64) as u64;
    if ell < 5000 {
        return (0..ell)
            .filter(|&x| {
                let v = (x as u128 * x as u128 + (ell - t) as u128 * x as u128 + n as u128) % ell as u128;
                v == 0
            })
            .collect();
    }
    // x = (t ± √(t² − 4n)) / 2 with Tonelli–Shanks.
    let disc = ((t as u128 * t as u128 + 4 * (ell - n) as u128) % ell as u128) as u64;
    let s = match sqrt_mod(disc, ell) {
        Some(s) => s,
        None => return vec![],
    };
    let inv2 = ell.div_ceil(2);
    let r1 = ((t + s) % ell) as u128 * inv2 as u128 % ell as u128;
    let r2 = ((t + ell - s) % ell) as u128 * inv2 as u128 % ell as u128;
    let mut v = vec![r1 as u64, r2 as u64];
    v.sort_unstable();
    v.dedup();
    v
}

fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mul = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul(tt, tt);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    Some(r)
}

/// Decomposition of (ℓ) into primes of 𝒪, with exponents.
pub fn factor_prime(ctx: FieldCtx, ell: u64) -> Result<Vec<(PrimeIdeal, u32)>, ArithError> {
    if !is_prime(ell) {
        return Err(ArithError::NotPrime(ell));
    }
    match ctx.kronecker(ell) {
        0 => {
            let r = roots_mod(ctx, ell)[0];
            Ok(vec![(PrimeIdeal::from_root(ctx, ell, SplitType::Ramified, r), 2)])
        }
        1 => {
            let rs = roots_mod(ctx, ell);
            Ok(rs.into_iter().map(|r| (PrimeIdeal::from_root(ctx, ell, SplitType::Split, r), 1)).collect())
        }
        _ => {
            let ideal = FracIdeal::principal(&ctx.elem(ell as i64, 0))?;
            Ok(vec![(PrimeIdeal { ell, split: SplitType::Inert, ideal, root: None }, 1)])
        }
    }
}

/// Primes of 𝒪 above ℓ.
pub fn primes_above(ctx: FieldCtx, ell: u64) -> Result<Vec<PrimeIdeal>, ArithError> {
    Ok(factor_prime(ctx, ell)?.into_iter().map(|(p, _)| p).collect())
}

/// All prime ideals of norm at most `bound`, ordered by (norm, ℓ, root).
pub fn primes_up_to_norm(ctx: FieldCtx, bound: u64) -> Vec<PrimeIdeal> {
    let mut out = Vec::new();
    for ell in 2..=bound {
        if !is_prime(ell) {
            continue;
        }
        for p in primes_above(ctx, ell).expect("ell is prime") {
            if p.norm() <= bound {
                out.push(p);
            }
        }
    }
    out.sort_by_key(|p| (p.norm(), p.ell, p.root));
    out
}

/// ord_P(I) for a fractional ideal I.
pub fn ideal_val(i: &FracIdeal, p: &PrimeIdeal) -> i64 {
    // I = (1/den)·J with J integral.
    let (den, a, b, c) = i.hnf();
    let ctx = i.ctx();
    let j = FracIdeal::from_hnf_unchecked(ctx, a.clone(), b.clone(), c.clone());
    let ell = BigInt::from(p.ell);
    let mut den_val = 0i64;
    let mut dd = den.clone();
    while dd.is_multiple_of(&ell) {
        dd /= &ell;
        den_val += 1;
    }
    let mut k = 0i64;
    let pinv = p.ideal.inv();
    let mut cur = j;
    loop {
        let (_, ca, _, cc) = cur.hnf();
        if !(ca * cc).is_multiple_of(&ell) {
            break;
        }
        let next = cur.mul(&pinv);
        if !next.is_integral() {
            break;
        }
        cur = next;
        k += 1;
    }
    k - den_val * p.ram_index() as i64
}

/// Prime factorization of a fractional ideal as a sorted map.
pub fn factor_ideal(i: &FracIdeal) -> Result<BTreeMap<PrimeKey, (PrimeIdeal, i64)>, ArithError> {
    let ctx = i.ctx();
    let (den, a, _, c) = i.hnf();
    let mut ells = prime_divisors(&(a * c))?;
    for q in prime_divisors(den)? {
        if !ells.contains(&q) {
            ells.push(q);
        }
    }
    ells.sort_unstable();
    let mut out = BTreeMap::new();
    for ell in ells {
        for p in primes_above(ctx, ell)? {
            let v = ideal_val(i, &p);
            if v != 0 {
                out.insert(PrimeKey::of(&p), (p, v));
            }
        }
    }
    Ok(out)
}

/// Ordering key for primes: (ℓ, root or ℓ for inert).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeKey {
    pub ell: u64,
    pub root: u64,
}

impl PrimeKey {
    pub fn of(p: &PrimeIdeal) -> Self {
        PrimeKey { ell: p.ell, root: p.root.unwrap_or(p.ell) }
    }
}

impl FracIdeal {
    pub(crate) fn from_hnf_unchecked(ctx: FieldCtx, a: BigInt, b: BigInt, c: BigInt) -> FracIdeal {
        FracIdeal::from_z_span(ctx, &[(a, BigInt::zero()), (b, c)], BigInt::one()).expect("full rank")
    }
}
