//! Algebraic Hecke characters with χ((α)) = α^{−a}·ᾱ^{−b} for α ≡ 1 mod* 𝔪.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{factor_ideal, principal_generator, FieldCtx, FracIdeal, PrimeIdeal, PrimeKey, QuadElem};
use crate::classgrp::RayClassGroup;

use super::algvalue::{radical, AlgValue, Radical};
use super::CharError;

/// Data attached to one structural generator 𝔤ᵢ of Cl_𝔪.
#[derive(Clone, Debug)]
pub struct GenData {
    pub ideal: FracIdeal,
    pub order: u64,
    /// 𝔤ᵢ^{nᵢ} = (βᵢ) with βᵢ ≡ 1 mod* 𝔪.
    pub beta: QuadElem,
    pub root: Arc<Radical>,
    pub twist: u64,
}

#[derive(Clone)]
enum Kind {
    Ray { ray: Arc<RayClassGroup>, gens: Vec<GenData> },
    Product(Vec<(Arc<HeckeChar>, i64)>),
}

pub struct HeckeChar {
    ctx: FieldCtx,
    modulus: FracIdeal,
    inf_type: (i64, i64),
    kind: Kind,
    cache: Mutex<HashMap<PrimeKey, AlgValue>>,
}

impl Clone for HeckeChar {
    fn clone(&self) -> Self {
        HeckeChar {
            ctx: self.ctx,
            modulus: self.modulus.clone(),
            inf_type: self.inf_type,
            kind: self.kind.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for HeckeChar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HeckeChar(d={}, m={}, type={:?}, twist={:?})", self.ctx.disc(), self.modulus, self.inf_type, self.twist())
    }
}

/// Multiply a generator by a unit so that it is ≡ 1 mod* 𝔪.
pub(crate) fn normalize_generator(ray: &RayClassGroup, g: &QuadElem) -> Result<QuadElem, CharError> {
    let ring = ray.ring();
    let r = ring.reduce_star(g)?;
    let one = ring.one();
    for u in g.ctx().units() {
        if ring.mul(ring.reduce(&u)?, r) == one {
            return Ok(&u * g);
        }
    }
    Err(CharError::Internal("generator is not in the trivial ray class"))
}

/// α^{−a}·ᾱ^{−b}.
pub fn infinity_value(alpha: &QuadElem, inf: (i64, i64)) -> Result<QuadElem, CharError> {
    Ok(&alpha.pow(-inf.0)? * &alpha.conj().pow(-inf.1)?)
}

/// Whether u^{a}·ū^{b} = 1 for every unit u ≡ 1 mod 𝔪.
pub fn unit_condition(ray: &RayClassGroup, inf: (i64, i64)) -> bool {
    let ring = ray.ring();
    let one = ring.one();
    ray.class_group()
        .ctx()
        .units()
        .iter()
        .all(|u| ring.reduce(u).map(|r| r != one).unwrap_or(true) || (&u.pow(inf.0).unwrap() * &u.conj().pow(inf.1).unwrap()).is_one())
}

impl HeckeChar {
    /// Number of characters of the given modulus and infinity type.
    pub fn count(modulus: &FracIdeal, inf: (i64, i64)) -> Result<usize, CharError> {
        let ray = RayClassGroup::new(modulus)?;
        if !unit_condition(&ray, inf) {
            return Err(CharError::NoSuchCharacter);
        }
        Ok(ray.order())
    }

    /// The character with the given twist index (mixed radix over generator orders).
    pub fn build(modulus: &FracIdeal, inf: (i64, i64), twist_index: usize) -> Result<HeckeChar, CharError> {
        let ray = Arc::new(RayClassGroup::new(modulus)?);
        Self::build_on(ray, inf, twist_index)
    }

    pub fn build_all(modulus: &FracIdeal, inf: (i64, i64)) -> Result<Vec<HeckeChar>, CharError> {
        let ray = Arc::new(RayClassGroup::new(modulus)?);
        let n = ray.order();
        (0..n).map(|i| Self::build_on(ray.clone(), inf, i)).collect()
    }

    pub fn build_on(ray: Arc<RayClassGroup>, inf: (i64, i64), twist_index: usize) -> Result<HeckeChar, CharError> {
        if !unit_condition(&ray, inf) {
            return Err(CharError::NoSuchCharacter);
        }
        if twist_index >= ray.order() {
            return Err(CharError::TwistOutOfRange(twist_index, ray.order()));
        }
        let mut rest = twist_index as u64;
        let mut gens = Vec::new();
        for (ideal, &order) in ray.gen_ideals().iter().zip(ray.structure()) {
            let g = principal_generator(&ideal.pow(order as i64)).ok_or(CharError::Internal("generator power not principal"))?;
            let beta = normalize_generator(&ray, &g)?;
            let root = radical(order, &infinity_value(&beta, inf)?);
            gens.push(GenData { ideal: ideal.clone(), order, beta, root, twist: rest % order });
            rest /= order;
        }
        Ok(HeckeChar {
            ctx: ray.class_group().ctx(),
            modulus: ray.modulus().clone(),
            inf_type: inf,
            kind: Kind::Ray { ray, gens },
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Π χᵢ^{eᵢ}; the modulus is the intersection of the factors' moduli.
    pub fn product(factors: &[(Arc<HeckeChar>, i64)]) -> Result<HeckeChar, CharError> {
        let first = factors.first().ok_or(CharError::Internal("empty product"))?;
        let ctx = first.0.ctx;
        let mut modulus = FracIdeal::unit(ctx);
        let mut inf = (0, 0);
        for (c, e) in factors {
            modulus = modulus.intersect(&c.modulus);
            inf = (inf.0 + e * c.inf_type.0, inf.1 + e * c.inf_type.1);
        }
        Ok(HeckeChar { ctx, modulus, inf_type: inf, kind: Kind::Product(factors.to_vec()), cache: Mutex::new(HashMap::new()) })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn modulus(&self) -> &FracIdeal {
        &self.modulus
    }

    pub fn inf_type(&self) -> (i64, i64) {
        self.inf_type
    }

    pub fn weight(&self) -> i64 {
        self.inf_type.0 + self.inf_type.1
    }

    pub fn is_unramified(&self) -> bool {
        self.modulus.is_unit_ideal()
    }

    /// Generator data for characters built on a ray class group.
    pub fn gens(&self) -> Option<&[GenData]> {
        match &self.kind {
            Kind::Ray { gens, .. } => Some(gens),
            Kind::Product(_) => None,
        }
    }

    pub fn ray(&self) -> Option<&Arc<RayClassGroup>> {
        match &self.kind {
            Kind::Ray { ray, .. } => Some(ray),
            Kind::Product(_) => None,
        }
    }

    /// (order, exponent) per generator.
    pub fn twist(&self) -> Vec<(u64, u64)> {
        self.gens().map(|g| g.iter().map(|d| (d.order, d.twist)).collect()).unwrap_or_default()
    }

    pub fn is_coprime(&self, i: &FracIdeal) -> bool {
        factor_ideal(&self.modulus).map(|f| f.values().all(|(p, _)| crate::arith::ideal_val(i, p) == 0)).unwrap_or(false)
    }

    /// χ(I) without using the prime cache.
    pub fn eval_direct(&self, i: &FracIdeal) -> Result<AlgValue, CharError> {
        match &self.kind {
            Kind::Ray { ray, gens } => {
                let e = ray.dlog(i).map_err(|_| CharError::NotCoprime)?;
                let mut j = i.clone();
                let mut value = AlgValue::one(self.ctx);
                let mut zeta = BigRational::from_integer(BigInt::from(0));
                for (g, &k) in gens.iter().zip(&e) {
                    if k == 0 {
                        continue;
                    }
                    j = j.div(&g.ideal.pow(k as i64));
                    value = value.mul(&AlgValue::from_radical(g.root.clone(), k as i64));
                    zeta += BigRational::new(BigInt::from(k * g.twist), BigInt::from(g.order));
                }
                let alpha = principal_generator(&j).ok_or(CharError::Internal("trivial ray class not principal"))?;
                let alpha = normalize_generator(ray, &alpha)?;
                let z = AlgValue::root_of_unity(self.ctx, (zeta.numer().try_into()).unwrap_or(0), zeta.denom().try_into().unwrap_or(1));
                Ok(value.mul(&z).mul_elem(&infinity_value(&alpha, self.inf_type)?))
            }
            Kind::Product(fs) => {
                let mut v = AlgValue::one(self.ctx);
                for (c, e) in fs {
                    v = v.mul(&c.eval_direct(i)?.pow(*e)?);
                }
                Ok(v)
            }
        }
    }

    /// χ(P) with caching.
    pub fn eval_prime(&self, p: &PrimeIdeal) -> Result<AlgValue, CharError> {
        let key = PrimeKey::of(p);
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = match &self.kind {
            Kind::Ray { .. } => self.eval_direct(p.ideal())?,
            Kind::Product(fs) => {
                let mut v = AlgValue::one(self.ctx);
                for (c, e) in fs {
                    v = v.mul(&c.eval_prime(p)?.pow(*e)?);
                }
                v
            }
        };
        self.cache.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// χ(I) through the prime factorization of I.
    pub fn eval(&self, i: &FracIdeal) -> Result<AlgValue, CharError> {
        let mut v = AlgValue::one(self.ctx);
        for (p, e) in factor_ideal(i)?.values() {
            v = v.mul(&self.eval_prime(p)?.pow(*e)?);
        }
        Ok(v)
    }

    /// χ̃(I) = χ(I)·Nm(I)^{(a+b)/2}, of absolute value 1.
    pub fn eval_unitary(&self, i: &FracIdeal) -> Result<AlgValue, CharError> {
        let v = self.eval(i)?;
        Ok(unitarize(&v, &i.norm(), self.weight()))
    }

    pub fn eval_unitary_prime(&self, p: &PrimeIdeal) -> Result<AlgValue, CharError> {
        let v = self.eval_prime(p)?;
        Ok(unitarize(&v, &p.ideal().norm(), self.weight()))
    }

    /// φ_∞(z) = z^a·z̄^b.
    pub fn infinity_component(&self, z: &QuadElem) -> Result<QuadElem, CharError> {
        infinity_value(z, (-self.inf_type.0, -self.inf_type.1))
    }
}

pub(crate) fn unitarize(v: &AlgValue, norm: &BigRational, weight: i64) -> AlgValue {
    let ctx = v.ctx();
    if weight % 2 == 0 {
        let k = weight / 2;
        let base = if k < 0 { num_traits::Inv::inv(norm.clone()) } else { norm.clone() };
        let f = (0..k.unsigned_abs()).fold(BigRational::from_integer(BigInt::from(1)), |acc, _| acc * &base);
        v.scale(&f)
    } else {
        let r = radical(2, &QuadElem::from_rational(ctx, norm.clone()));
        v.mul(&AlgValue::from_radical(r, weight))
    }
}
