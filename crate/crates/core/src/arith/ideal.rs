//! Fractional ideals of 𝒪 in Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldCtx, QuadElem};
use super::ArithError;

/// The lattice (1/den)·(aℤ + (b + cω)ℤ).
///
/// Canonical: c | a, c | b, 0 ≤ b < a, and gcd(den, a, b, c) = 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FracIdeal {
    ctx: FieldCtx,
    den: BigInt,
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Integer coordinates of x + yω.
pub(crate) type IntVec = (BigInt, BigInt);

pub(crate) fn int_mul(ctx: FieldCtx, u: &IntVec, v: &IntVec) -> IntVec {
    let t = BigInt::from(ctx.trace_omega());
    let n = BigInt::from(ctx.norm_omega());
    let yy = &u.1 * &v.1;
    (&u.0 * &v.0 - &n * &yy, &u.0 * &v.1 + &v.0 * &u.1 + t * yy)
}

/// Hermite normal form of the ℤ-span of integer vectors: returns (a, b, c) with
/// span = aℤ(1,0) + ℤ(b,c), or None if the span has rank < 2.
pub(crate) fn hnf2(vs: &[IntVec]) -> Option<(BigInt, BigInt, BigInt)> {
    let mut rows: Vec<IntVec> = vs.iter().filter(|v| !(v.0.is_zero() && v.1.is_zero())).cloned().collect();
    // Euclid on the second coordinate.
    loop {
        let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].1.is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let piv = *nz.iter().min_by_key(|&&i| rows[i].1.abs()).unwrap();
        let (px, py) = rows[piv].clone();
        for &i in &nz {
            if i == piv {
                continue;
            }
            let q = rows[i].1.div_floor(&py);
            rows[i].0 -= &q * &px;
            rows[i].1 -= &q * &py;
        }
    }
    let piv = rows.iter().position(|r| !r.1.is_zero())?;
    let (mut bx, mut c) = rows[piv].clone();
    if c.is_negative() {
        bx = -bx;
        c = -c;
    }
    let mut a = BigInt::zero();
    for (i, r) in rows.iter().enumerate() {
        if i != piv {
            a = a.gcd(&r.0);
        }
    }
    if a.is_zero() {
        return None;
    }
    let b = bx.mod_floor(&a);
    Some((a, b, c))
}

impl FracIdeal {
    /// The ideal with ℤ-basis given by `vecs / den`, which must already be an 𝒪-module.
    pub(crate) fn from_z_span(ctx: FieldCtx, vecs: &[IntVec], den: BigInt) -> Result<Self, ArithError> {
        let (a, b, c) = hnf2(vecs).ok_or(ArithError::ZeroIdeal)?;
        Ok(Self::normalize(ctx, den, a, b, c))
    }

    fn normalize(ctx: FieldCtx, den: BigInt, a: BigInt, b: BigInt, c: BigInt) -> Self {
        let g = den.gcd(&a).gcd(&b).gcd(&c);
        let (den, a, b, c) = if g.is_one() { (den, a, b, c) } else { (den / &g, a / &g, b / &g, c / &g) };
        debug_assert!(den.is_positive() && a.is_positive() && c.is_positive());
        FracIdeal { ctx, den, a, b, c }
    }

    /// HNF of the 𝒪-module generated by `gens`.
    pub fn from_gens(ctx: FieldCtx, gens: &[QuadElem]) -> Result<Self, ArithError> {
        let mut den = BigInt::one();
        for g in gens {
            if g.ctx() != ctx {
                return Err(ArithError::MixedFields(ctx.disc(), g.ctx().disc()));
            }
            den = den.lcm(&g.denominator());
        }
        let w: IntVec = (BigInt::zero(), BigInt::one());
        let mut vecs = Vec::with_capacity(2 * gens.len());
        for g in gens {
            let v = g.scaled_coords(&den);
            vecs.push(int_mul(ctx, &v, &w));
            vecs.push(v);
        }
        Self::from_z_span(ctx, &vecs, den)
    }

    /// Principal ideal (α).
    pub fn principal(alpha: &QuadElem) -> Result<Self, ArithError> {
        Self::from_gens(alpha.ctx(), std::slice::from_ref(alpha))
    }

    pub fn unit(ctx: FieldCtx) -> Self {
        FracIdeal { ctx, den: BigInt::one(), a: BigInt::one(), b: BigInt::zero(), c: BigInt::one() }
    }

    /// The ideal nℤ·𝒪 for a nonzero rational n.
    pub fn rational(ctx: FieldCtx, n: &BigRational) -> Result<Self, ArithError> {
        Self::principal(&QuadElem::from_rational(ctx, n.clone()))
    }

    /// Build directly from HNF data; validates the ideal conditions.
    pub fn from_hnf(ctx: FieldCtx, den: BigInt, a: BigInt, b: BigInt, c: BigInt) -> Result<Self, ArithError> {
        if !den.is_positive() || !a.is_positive() || !c.is_positive() {
            return Err(ArithError::InvalidHnf);
        }
        let cand = Self::from_z_span(ctx, &[(a.clone(), BigInt::zero()), (b.clone(), c.clone())], den.clone())?;
        let w: IntVec = (BigInt::zero(), BigInt::one());
        let closed = [(a, BigInt::zero()), (b, c)].iter().all(|v| {
            let wv = int_mul(ctx, v, &w);
            cand.contains_scaled(&wv)
        });
        if !closed {
            return Err(ArithError::InvalidHnf);
        }
        Ok(cand)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    /// (den, a, b, c).
    pub fn hnf(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.den, &self.a, &self.b, &self.c)
    }

    /// ℤ-basis {a/den, (b + cω)/den}.
    pub fn basis(&self) -> [QuadElem; 2] {
        let r = BigRational::new(BigInt::one(), self.den.clone());
        [QuadElem::from_bigints(self.ctx, self.a.clone(), BigInt::zero()).scale(&r), QuadElem::from_bigints(self.ctx, self.b.clone(), self.c.clone()).scale(&r)]
    }

    fn int_basis(&self) -> [IntVec; 2] {
        [(self.a.clone(), BigInt::zero()), (self.b.clone(), self.c.clone())]
    }

    pub fn norm(&self) -> BigRational {
        BigRational::new(&self.a * &self.c, &self.den * &self.den)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.den.is_one() && self.a.is_one() && self.c.is_one()
    }

    /// Membership of den·v (integer coordinates) in aℤ + (b+cω)ℤ.
    fn contains_scaled(&self, v: &IntVec) -> bool {
        if !v.1.is_multiple_of(&self.c) {
            return false;
        }
        let k = &v.1 / &self.c;
        (&v.0 - k * &self.b).is_multiple_of(&self.a)
    }

    pub fn contains(&self, z: &QuadElem) -> bool {
        let s = z.scale(&BigRational::from_integer(self.den.clone()));
        if !s.is_integral() {
            return false;
        }
        self.contains_scaled(&(s.x().to_integer(), s.y().to_integer()))
    }

    pub fn mul(&self, o: &FracIdeal) -> FracIdeal {
        let mut vecs = Vec::with_capacity(4);
        for u in self.int_basis().iter() {
            for v in o.int_basis().iter() {
                vecs.push(int_mul(self.ctx, u, v));
            }
        }
        Self::from_z_span(self.ctx, &vecs, &self.den * &o.den).expect("product of nonzero ideals")
    }

    pub fn add(&self, o: &FracIdeal) -> FracIdeal {
        let den = self.den.lcm(&o.den);
        let fs = &den / &self.den;
        let fo = &den / &o.den;
        let mut vecs = Vec::with_capacity(4);
        for v in self.int_basis() {
            vecs.push((v.0 * &fs, v.1 * &fs));
        }
        for v in o.int_basis() {
            vecs.push((v.0 * &fo, v.1 * &fo));
        }
        Self::from_z_span(self.ctx, &vecs, den).expect("sum of nonzero ideals")
    }

    /// Intersection via I ∩ J = IJ / (I + J).
    pub fn intersect(&self, o: &FracIdeal) -> FracIdeal {
        self.mul(o).mul(&self.add(o).inv())
    }

    pub fn mul_elem(&self, z: &QuadElem) -> Result<FracIdeal, ArithError> {
        if z.is_zero() {
            return Err(ArithError::ZeroIdeal);
        }
        let zd = z.denominator();
        let zi = z.scaled_coords(&zd);
        let vecs: Vec<IntVec> = self.int_basis().iter().map(|v| int_mul(self.ctx, v, &zi)).collect();
        Self::from_z_span(self.ctx, &vecs, &self.den * zd)
    }

    pub fn scale(&self, r: &BigRational) -> Result<FracIdeal, ArithError> {
        self.mul_elem(&QuadElem::from_rational(self.ctx, r.clone()))
    }

    pub fn conj(&self) -> FracIdeal {
        let t = BigInt::from(self.ctx.trace_omega());
        let vecs = [(self.a.clone(), BigInt::zero()), (&self.b + &self.c * t, -self.c.clone())];
        Self::from_z_span(self.ctx, &vecs, self.den.clone()).expect("conjugate of nonzero ideal")
    }

    /// I⁻¹ = Ī / Nm(I).
    pub fn inv(&self) -> FracIdeal {
        self.conj().scale(&self.norm().recip()).expect("nonzero norm")
    }

    pub fn div(&self, o: &FracIdeal) -> FracIdeal {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: i64) -> FracIdeal {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = FracIdeal::unit(self.ctx);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// True iff self ⊆ o.
    pub fn is_subset_of(&self, o: &FracIdeal) -> bool {
        self.basis().iter().all(|z| o.contains(z))
    }

    /// The integral primitive ideal (a/c, b/c + ω) in the class of self.
    pub fn primitive_part(&self) -> (BigInt, BigInt) {
        (&self.a / &self.c, &self.b / &self.c)
    }

    /// All integral ideals of norm n.
    pub fn integral_of_norm(ctx: FieldCtx, n: u64) -> Vec<FracIdeal> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let w: IntVec = (BigInt::zero(), BigInt::one());
        for c in 1..=n {
            if !n.is_multiple_of(c) {
                continue;
            }
            let a = n / c;
            if !a.is_multiple_of(c) {
                continue;
            }
            let mut b = 0;
            while b < a {
                let cand = FracIdeal { ctx, den: BigInt::one(), a: BigInt::from(a), b: BigInt::from(b), c: BigInt::from(c) };
                if cand.int_basis().iter().all(|v| cand.contains_scaled(&int_mul(ctx, v, &w))) {
                    out.push(cand);
                }
                b += c;
            }
        }
        out
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {} + {}w)", self.a, self.b, self.c)?;
        if !self.den.is_one() {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> FieldCtx {
        FieldCtx::new(d).unwrap()
    }

    fn hnf_tuple(i: &FracIdeal) -> (i64, i64, i64, i64) {
        use num_traits::ToPrimitive;
        let (den, a, b, c) = i.hnf();
        (a.to_i64().unwrap(), b.to_i64().unwrap(), c.to_i64().unwrap(), den.to_i64().unwrap())
    }

    #[test]
    fn ramified_prime_d20() {
        let f = k(-20);
        let p = FracIdeal::from_gens(f, &[f.elem(2, 0), f.elem(1, 1)]).unwrap();
        assert_eq!(hnf_tuple(&p), (2, 1, 1, 1));
        assert_eq!(p.mul(&p), FracIdeal::principal(&f.elem(2, 0)).unwrap());
    }

    #[test]
    fn unit_ideal_and_inverse() {
        let f = k(-20);
        let o = FracIdeal::from_gens(f, &[f.one()]).unwrap();
        assert_eq!(hnf_tuple(&o), (1, 0, 1, 1));
        assert_eq!(o.inv(), o);
    }

    #[test]
    fn split_prime_square_times_conjugate() {
        let f = k(-20);
        let q = FracIdeal::from_gens(f, &[f.elem(3, 0), f.elem(1, 1)]).unwrap();
        let q2 = q.mul(&q);
        assert_eq!(q2.norm(), BigRational::from_integer(9.into()));
        assert_eq!(q2.mul(&q2.conj()), FracIdeal::principal(&f.elem(9, 0)).unwrap());
    }

    #[test]
    fn ramified_generator_d67() {
        let f = k(-67);
        let s = FracIdeal::principal(&f.sqrt_d()).unwrap();
        assert_eq!(s.mul(&s), FracIdeal::principal(&f.elem(67, 0)).unwrap());
        assert_eq!(s.norm(), BigRational::from_integer(67.into()));
    }

    #[test]
    fn hnf_is_idempotent() {
        let f = k(-67);
        let i = FracIdeal::from_gens(f, &[f.elem(17, 0), f.elem(0, 1)]).unwrap();
        let j = FracIdeal::from_gens(f, &i.basis()).unwrap();
        assert_eq!(i, j);
    }

    #[test]
    fn ideals_of_norm_match_counts() {
        // d = −67: 17 splits, 2 is inert, 67 ramifies.
        let f = k(-67);
        assert_eq!(FracIdeal::integral_of_norm(f, 17).len(), 2);
        assert_eq!(FracIdeal::integral_of_norm(f, 2).len(), 0);
        assert_eq!(FracIdeal::integral_of_norm(f, 4).len(), 1);
        assert_eq!(FracIdeal::integral_of_norm(f, 67).len(), 1);
        assert_eq!(FracIdeal::integral_of_norm(f, 289).len(), 3);
    }

    #[test]
    fn from_hnf_rejects_non_ideals() {
        let f = k(-20);
        assert!(FracIdeal::from_hnf(f, 1.into(), 2.into(), 0.into(), 1.into()).is_err());
        assert!(FracIdeal::from_hnf(f, 1.into(), 2.into(), 1.into(), 1.into()).is_ok());
    }
}
