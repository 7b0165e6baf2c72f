//! Ψ_φ(g) = ∏_v φ₁,v(a_v)·φ₂,v(d_v) for g_v = (a_v, *; 0, d_v)·k_v with
//! k_v ∈ SL₂(𝒪_v), and its twist by w₀.φ = (φ₂|·|, φ₁|·|⁻¹).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Inv;
use serde::Serialize;

use crate::arith::{factor_ideal, FracIdeal, Mat2, ModRing, PrimeIdeal, PrimeKey, QuadElem};
use crate::characters::{AlgValue, HeckeChar};

use super::decomp::iwasawa_local;
use super::idele::DiagIdele;
use super::local::{abs_value, LocalChar};
use super::EisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Twist {
    Id,
    W0,
}

/// The pair (φ₁, φ₂) with the places where χ = φ₁/φ₂ is ramified.
#[derive(Clone, Debug)]
pub struct PsiContext {
    phi1: LocalChar,
    phi2: LocalChar,
    /// Places dividing a modulus, with whether χ_v is trivial on 𝒪_v*.
    level_places: BTreeMap<PrimeKey, (PrimeIdeal, bool)>,
}

/// One local factor of Ψ with the diagonal of its Iwasawa component.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub prime: PrimeIdeal,
    pub b11: QuadElem,
    pub b22: QuadElem,
    pub value: AlgValue,
}

impl fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: b11 = {}, b22 = {}, factor = {}", self.prime, self.b11, self.b22, self.value)
    }
}

#[derive(Clone, Debug)]
pub struct PsiValue {
    pub value: AlgValue,
    pub factors: Vec<LocalFactor>,
}

impl PsiValue {
    pub fn trace(&self) -> String {
        self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ")
    }
}

fn add_places(out: &mut BTreeMap<PrimeKey, PrimeIdeal>, z: &QuadElem) -> Result<(), EisError> {
    if z.is_zero() {
        return Ok(());
    }
    for (p, _) in factor_ideal(&FracIdeal::principal(z)?)?.into_values() {
        out.insert(PrimeKey::of(&p), p);
    }
    Ok(())
}

impl PsiContext {
    pub fn new(phi1: Arc<HeckeChar>, phi2: Arc<HeckeChar>) -> Result<PsiContext, EisError> {
        let phi1 = LocalChar::new(phi1)?;
        let phi2 = LocalChar::new(phi2)?;
        let m1 = phi1.character().modulus().clone();
        let m2 = phi2.character().modulus().clone();
        let mut level_places = BTreeMap::new();
        let primes: Vec<PrimeIdeal> = phi1.ramified_primes().chain(phi2.ramified_primes()).cloned().collect();
        for p in primes {
            let key = PrimeKey::of(&p);
            if level_places.contains_key(&key) {
                continue;
            }
            let e = crate::arith::ideal_val(&m1, &p).max(crate::arith::ideal_val(&m2, &p));
            let ring = ModRing::new(&p.ideal().pow(e))?;
            let mut trivial = true;
            for r in ring.units() {
                let u = ring.lift(r);
                if !phi1.value(&p, &u)?.eq_exact(&phi2.value(&p, &u)?) {
                    trivial = false;
                    break;
                }
            }
            level_places.insert(key, (p, trivial));
        }
        Ok(PsiContext { phi1, phi2, level_places })
    }

    pub fn phi1(&self) -> &Arc<HeckeChar> {
        self.phi1.character()
    }

    pub fn phi2(&self) -> &Arc<HeckeChar> {
        self.phi2.character()
    }

    /// Whether χ = φ₁/φ₂ is unramified at every place.
    pub fn ratio_unramified(&self) -> bool {
        self.level_places.values().all(|(_, t)| *t)
    }

    /// Primes dividing the moduli of φ₁ or φ₂.
    pub fn level_primes(&self) -> Vec<PrimeIdeal> {
        self.level_places.values().map(|(p, _)| p.clone()).collect()
    }

    /// The local factor of Ψ at v for g ∈ GL₂(F_v).
    pub fn local_factor(&self, g: &Mat2, v: &PrimeIdeal, twist: Twist) -> Result<LocalFactor, EisError> {
        if let Some((_, false)) = self.level_places.get(&PrimeKey::of(v)) {
            return Err(EisError::UndefinedAtLevel(v.to_string()));
        }
        let b = iwasawa_local(g, v)?.b;
        let (x, y) = (b.a, b.d);
        let value = match twist {
            Twist::Id => self.phi1.value(v, &x)?.mul(&self.phi2.value(v, &y)?),
            Twist::W0 => {
                let s = abs_value(v, &x)? * abs_value(v, &y)?.inv();
                self.phi2.value(v, &x)?.mul(&self.phi1.value(v, &y)?).scale(&s)
            }
        };
        Ok(LocalFactor { prime: v.clone(), b11: x, b22: y, value })
    }

    /// Ψ(η·t) as a product of local factors over every place where η·t is
    /// not in GL₂(𝒪_v) or a character is ramified.
    pub fn eval(&self, eta: &Mat2, t: &DiagIdele, twist: Twist) -> Result<PsiValue, EisError> {
        if eta.det().is_zero() {
            return Err(EisError::Singular);
        }
        let mut places = BTreeMap::new();
        for z in eta.entries() {
            add_places(&mut places, z)?;
        }
        add_places(&mut places, &eta.det())?;
        for p in t.support() {
            places.insert(PrimeKey::of(&p), p);
        }
        for (k, (p, _)) in &self.level_places {
            places.insert(*k, p.clone());
        }
        let ctx = eta.ctx();
        let mut value = AlgValue::one(ctx);
        let mut factors = Vec::with_capacity(places.len());
        for v in places.values() {
            let g = eta.mul(&Mat2::diag(&t.t1.component(v), &t.t2.component(v)));
            let f = self.local_factor(&g, v, twist)?;
            value = value.mul(&f.value);
            factors.push(f);
        }
        Ok(PsiValue { value, factors })
    }
}
