//! Exact algebraic character values: base · Π ρᵢ^{eᵢ} · ζ, where base ∈ F,
//! each ρᵢ is the principal nᵢ-th root of some Bᵢ ∈ F, and ζ is a root of unity.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rug::Float;

use crate::arith::{ArithError, FieldCtx, QuadElem};
use crate::numeric::{embed, Complex};

/// The principal n-th root of an element of F.
pub struct Radical {
    id: u64,
    n: u64,
    power: QuadElem,
    cached: Mutex<Option<Complex>>,
}

impl Radical {
    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn power(&self) -> &QuadElem {
        &self.power
    }

    pub fn embed(&self, prec: u32) -> Complex {
        let mut c = self.cached.lock().unwrap();
        if let Some(v) = c.as_ref() {
            if v.prec() >= prec {
                return Complex::new(Float::with_val(prec, &v.re), Float::with_val(prec, &v.im));
            }
        }
        let v = embed(prec + 16, &self.power).principal_root(self.n);
        *c = Some(v.clone());
        Complex::new(Float::with_val(prec, &v.re), Float::with_val(prec, &v.im))
    }
}

impl fmt::Debug for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^(1/{})", self.power, self.n)
    }
}

type RadKey = (u64, QuadElem);

/// Next radical id and the interned radicals.
type Registry = Mutex<(u64, HashMap<RadKey, Arc<Radical>>)>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new((0, HashMap::new())))
}

/// The shared radical object for the principal n-th root of `power`.
pub fn radical(n: u64, power: &QuadElem) -> Arc<Radical> {
    let mut reg = registry().lock().unwrap();
    let key = (n, power.clone());
    if let Some(r) = reg.1.get(&key) {
        return r.clone();
    }
    reg.0 += 1;
    let r = Arc::new(Radical { id: reg.0, n, power: power.clone(), cached: Mutex::new(None) });
    reg.1.insert(key, r.clone());
    r
}

/// An algebraic number in the compositum of F with radicals and cyclotomic fields.
#[derive(Clone)]
pub struct AlgValue {
    base: QuadElem,
    rads: Vec<(Arc<Radical>, i64)>,
    /// ζ = e^{2πi·zeta}, with zeta ∈ [0, 1).
    zeta: BigRational,
}

fn frac_part(q: &BigRational) -> BigRational {
    q - q.floor()
}

impl AlgValue {
    pub fn from_elem(z: QuadElem) -> Self {
        AlgValue { base: z, rads: Vec::new(), zeta: BigRational::zero() }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        AlgValue::from_elem(ctx.one())
    }

    pub fn ctx(&self) -> FieldCtx {
        self.base.ctx()
    }

    /// e^{2πi·num/den}.
    pub fn root_of_unity(ctx: FieldCtx, num: i64, den: u64) -> Self {
        let q = BigRational::new(num.into(), den.into());
        AlgValue { base: ctx.one(), rads: Vec::new(), zeta: frac_part(&q) }
    }

    pub fn from_radical(r: Arc<Radical>, e: i64) -> Self {
        let ctx = r.power.ctx();
        let mut v = AlgValue { base: ctx.one(), rads: vec![(r, e)], zeta: BigRational::zero() };
        v.normalize();
        v
    }

    pub fn base(&self) -> &QuadElem {
        &self.base
    }

    pub fn radicals(&self) -> &[(Arc<Radical>, i64)] {
        &self.rads
    }

    pub fn zeta(&self) -> &BigRational {
        &self.zeta
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    fn normalize(&mut self) {
        let mut out: Vec<(Arc<Radical>, i64)> = Vec::new();
        self.rads.sort_by_key(|(r, _)| r.id);
        for (r, e) in self.rads.drain(..) {
            let n = r.n as i64;
            let (q, rem) = e.div_mod_floor(&n);
            if q != 0 {
                self.base = &self.base * &r.power.pow(q).expect("radicand is nonzero");
            }
            if rem == 0 {
                continue;
            }
            match out.last_mut() {
                Some((last, le)) if last.id == r.id => {
                    *le += rem;
                    if *le >= n {
                        *le -= n;
                        self.base = &self.base * &r.power;
                    }
                }
                _ => out.push((r, rem)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        self.rads = out;
        self.zeta = frac_part(&self.zeta);
    }

    pub fn mul(&self, o: &AlgValue) -> AlgValue {
        let mut rads = self.rads.clone();
        rads.extend(o.rads.iter().cloned());
        let mut v = AlgValue { base: &self.base * &o.base, rads, zeta: &self.zeta + &o.zeta };
        v.normalize();
        v
    }

    pub fn mul_elem(&self, z: &QuadElem) -> AlgValue {
        AlgValue { base: &self.base * z, rads: self.rads.clone(), zeta: self.zeta.clone() }
    }

    pub fn scale(&self, r: &BigRational) -> AlgValue {
        AlgValue { base: self.base.scale(r), rads: self.rads.clone(), zeta: self.zeta.clone() }
    }

    pub fn pow(&self, e: i64) -> Result<AlgValue, ArithError> {
        let mut v = AlgValue {
            base: self.base.pow(e)?,
            rads: self.rads.iter().map(|(r, k)| (r.clone(), k * e)).collect(),
            zeta: &self.zeta * BigRational::from_integer(e.into()),
        };
        v.normalize();
        Ok(v)
    }

    pub fn inv(&self) -> Result<AlgValue, ArithError> {
        self.pow(-1)
    }

    pub fn div(&self, o: &AlgValue) -> Result<AlgValue, ArithError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Complex conjugate, expressed through radicals of conjugated radicands.
    pub fn conj(&self) -> AlgValue {
        let ctx = self.ctx();
        let mut v = AlgValue::from_elem(self.base.conj());
        v.zeta = frac_part(&-self.zeta.clone());
        for (r, e) in &self.rads {
            let rc = radical(r.n, &r.power.conj());
            let p = &r.power;
            let mut term = AlgValue::from_radical(rc, *e);
            // On the negative real axis the principal branch is not conjugation-stable.
            if p.is_rational() && p.x().is_negative() {
                term = term.mul(&AlgValue::root_of_unity(ctx, -*e, r.n));
            }
            v = v.mul(&term);
        }
        v
    }

    /// M and the element self^M ∈ F, where M kills all radicals and ζ.
    pub fn power_into_field(&self) -> (u64, QuadElem) {
        let mut m: u64 = self.zeta.denom().try_into().unwrap_or(1);
        for (r, _) in &self.rads {
            m = m.lcm(&r.n);
        }
        let mut out = self.base.pow(m as i64).expect("nonzero base");
        for (r, e) in &self.rads {
            let k = (*e) * (m / r.n) as i64;
            out = &out * &r.power.pow(k).expect("nonzero radicand");
        }
        (m, out)
    }

    /// Exact value when it lies in F.
    pub fn as_field_elem(&self) -> Option<QuadElem> {
        if !self.rads.is_empty() {
            return None;
        }
        if self.zeta.is_zero() {
            return Some(self.base.clone());
        }
        let ctx = self.ctx();
        let den: u64 = self.zeta.denom().try_into().ok()?;
        let num: i64 = self.zeta.numer().try_into().ok()?;
        if den == 2 {
            return Some(-self.base.clone());
        }
        let w = ctx.unit_count() as u64;
        if w > 2 && w.is_multiple_of(den) {
            // ω is a primitive w-th root of unity when w ∈ {4, 6}.
            let k = num * (w / den) as i64;
            return Some(&self.base * &ctx.omega().pow(k).ok()?);
        }
        None
    }

    pub fn embed(&self, prec: u32) -> Complex {
        let mut acc = embed(prec, &self.base);
        for (r, e) in &self.rads {
            acc = &acc * &r.embed(prec).powi(*e);
        }
        if !self.zeta.is_zero() {
            let num: i64 = self.zeta.numer().try_into().expect("small root of unity");
            let den: u64 = self.zeta.denom().try_into().expect("small root of unity");
            acc = &acc * &Complex::root_of_unity(prec, num, den);
        }
        acc
    }

    pub fn to_c64(&self) -> (f64, f64) {
        self.embed(128).to_f64()
    }

    /// Exact test for self = 1.
    pub fn is_one(&self) -> bool {
        if self.rads.is_empty() && self.zeta.is_zero() {
            return self.base.is_one();
        }
        let (m, p) = self.power_into_field();
        if !p.is_one() {
            return false;
        }
        // self is an M-th root of unity; distinct ones are 2·sin(π/M) apart.
        let prec = 128 + 2 * (64 - m.leading_zeros());
        let d = self.embed(prec).dist(&Complex::one(prec));
        let bound = (crate::numeric::pi(prec) / Float::with_val(prec, m)).sin();
        d < bound
    }

    /// Exact equality.
    pub fn eq_exact(&self, o: &AlgValue) -> bool {
        if self.base.is_zero() || o.base.is_zero() {
            return self.base.is_zero() && o.base.is_zero();
        }
        if self.zeta == o.zeta
            && self.base == o.base
            && self.rads.len() == o.rads.len()
            && self.rads.iter().zip(&o.rads).all(|((a, x), (b, y))| a.id == b.id && x == y)
        {
            return true;
        }
        self.div(o).map(|r| r.is_one()).unwrap_or(false)
    }
}

impl fmt::Debug for AlgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        for (r, e) in &self.rads {
            write!(f, " * {:?}^{}", r, e)?;
        }
        if !self.zeta.is_zero() {
            write!(f, " * e(2pi i {})", self.zeta)?;
        }
        Ok(())
    }
}

impl fmt::Display for AlgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
