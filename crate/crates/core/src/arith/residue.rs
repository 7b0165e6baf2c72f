//! The finite ring 𝒪/𝔪 and reduction of field elements prime to 𝔪.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{FieldCtx, QuadElem};
use super::ideal::FracIdeal;
use super::lattice::find_element;
use super::prime::{factor_ideal, ideal_val, PrimeIdeal};
use super::ArithError;

/// A residue x + yω mod 𝔪 in canonical form 0 ≤ x < a, 0 ≤ y < c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    pub x: i64,
    pub y: i64,
}

/// 𝒪/𝔪 for a nonzero integral ideal 𝔪 of moderate norm.
#[derive(Clone, Debug)]
pub struct ModRing {
    ctx: FieldCtx,
    modulus: FracIdeal,
    a: i64,
    b: i64,
    c: i64,
    primes: Vec<(PrimeIdeal, i64)>,
    phi: u64,
}

impl ModRing {
    pub fn new(modulus: &FracIdeal) -> Result<Self, ArithError> {
        if !modulus.is_integral() {
            return Err(ArithError::NotIntegral);
        }
        let (_, a, b, c) = modulus.hnf();
        let (a, b, c) =
            (a.to_i64().ok_or(ArithError::ModulusTooLarge)?, b.to_i64().ok_or(ArithError::ModulusTooLarge)?, c.to_i64().ok_or(ArithError::ModulusTooLarge)?);
        if a.checked_mul(c).is_none_or(|n| n > 50_000_000) {
            return Err(ArithError::ModulusTooLarge);
        }
        let primes: Vec<(PrimeIdeal, i64)> = factor_ideal(modulus)?.into_values().collect();
        let mut phi = (a * c) as u64;
        for (p, _) in &primes {
            phi = phi / p.norm() * (p.norm() - 1);
        }
        Ok(ModRing { ctx: modulus.ctx(), modulus: modulus.clone(), a, b, c, primes, phi })
    }

    pub fn modulus(&self) -> &FracIdeal {
        &self.modulus
    }

    pub fn primes(&self) -> &[(PrimeIdeal, i64)] {
        &self.primes
    }

    pub fn size(&self) -> u64 {
        (self.a * self.c) as u64
    }

    /// #(𝒪/𝔪)*.
    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn one(&self) -> Residue {
        self.reduce_ints(1, 0)
    }

    pub fn reduce_ints(&self, x: i128, y: i128) -> Residue {
        let c = self.c as i128;
        let yr = y.rem_euclid(c);
        let k = (y - yr) / c;
        let xr = (x - k * self.b as i128).rem_euclid(self.a as i128);
        Residue { x: xr as i64, y: yr as i64 }
    }

    /// Reduction of an element of 𝒪.
    pub fn reduce(&self, z: &QuadElem) -> Result<Residue, ArithError> {
        if !z.is_integral() {
            return Err(ArithError::NotIntegral);
        }
        let m = BigInt::from(self.a * self.c);
        let x = z.x().to_integer().mod_floor(&m).to_i128().unwrap();
        let y = z.y().to_integer().mod_floor(&m).to_i128().unwrap();
        Ok(self.reduce_ints(x, y))
    }

    pub fn lift(&self, r: Residue) -> QuadElem {
        self.ctx.elem(r.x, r.y)
    }

    pub fn mul(&self, u: Residue, v: Residue) -> Residue {
        let t = self.ctx.trace_omega() as i128;
        let n = self.ctx.norm_omega() as i128;
        let (x1, y1, x2, y2) = (u.x as i128, u.y as i128, v.x as i128, v.y as i128);
        let yy = y1 * y2;
        self.reduce_ints(x1 * x2 - n * yy, x1 * y2 + x2 * y1 + t * yy)
    }

    pub fn pow(&self, u: Residue, mut e: u64) -> Residue {
        let mut acc = self.one();
        let mut b = u;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, u: Residue) -> bool {
        let z = self.lift(u);
        self.primes.iter().all(|(p, _)| !p.ideal().contains(&z))
    }

    pub fn inv(&self, u: Residue) -> Result<Residue, ArithError> {
        if !self.is_unit(u) {
            return Err(ArithError::NotCoprime);
        }
        Ok(self.pow(u, self.phi - 1))
    }

    /// Every residue class in canonical order.
    pub fn all(&self) -> impl Iterator<Item = Residue> + '_ {
        (0..self.a).flat_map(move |x| (0..self.c).map(move |y| Residue { x, y }))
    }

    /// The unit group (𝒪/𝔪)* in canonical order.
    pub fn units(&self) -> Vec<Residue> {
        self.all().filter(|&r| self.is_unit(r)).collect()
    }

    /// True iff α is a unit at every prime dividing 𝔪.
    pub fn coprime(&self, z: &QuadElem) -> bool {
        if z.is_zero() {
            return false;
        }
        let i = match FracIdeal::principal(z) {
            Ok(i) => i,
            Err(_) => return false,
        };
        self.primes.iter().all(|(p, _)| ideal_val(&i, p) == 0)
    }

    /// Image of α ∈ F with ord_P(α) = 0 for all P | 𝔪 ("α mod* 𝔪").
    pub fn reduce_star(&self, z: &QuadElem) -> Result<Residue, ArithError> {
        if z.is_integral() {
            let r = self.reduce(z)?;
            return if self.is_unit(r) { Ok(r) } else { Err(ArithError::NotCoprime) };
        }
        let den = z.denominator();
        let nm = BigInt::from(self.a * self.c);
        if den.gcd(&nm).is_one() {
            let num = z.scale(&BigRational::from_integer(den.clone()));
            let r = self.reduce(&num)?;
            let dr = self.reduce(&QuadElem::from_bigints(self.ctx, den, BigInt::zero()))?;
            let out = self.mul(r, self.inv(dr)?);
            return if self.is_unit(out) { Ok(out) } else { Err(ArithError::NotCoprime) };
        }
        if !self.coprime(z) {
            return Err(ArithError::NotCoprime);
        }
        // δ ∈ 𝒪 ∩ α⁻¹𝒪 prime to 𝔪, then α ≡ (δα)·δ⁻¹.
        let o = FracIdeal::unit(self.ctx);
        let ainv = FracIdeal::principal(&z.inv()?)?;
        let dideal = o.intersect(&ainv);
        let delta = find_element(&dideal, 64, |e| self.coprime(e)).ok_or(ArithError::SearchExhausted)?;
        let num = &delta * z;
        let r = self.reduce(&num)?;
        let dr = self.reduce(&delta)?;
        Ok(self.mul(r, self.inv(dr)?))
    }

    /// The distinct residues of the units of 𝒪.
    pub fn unit_image(&self) -> Vec<Residue> {
        let mut v: Vec<Residue> = self.ctx.units().iter().map(|u| self.reduce(u).unwrap()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Index of a residue in `all()` order.
    pub fn index(&self, r: Residue) -> usize {
        (r.x * self.c + r.y) as usize
    }

    pub fn is_zero(&self, r: Residue) -> bool {
        r.x.is_zero() && r.y.is_zero()
    }
}
