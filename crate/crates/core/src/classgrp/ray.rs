//! Ray class groups Cl_𝔪(F) with discrete logarithms.

use std::collections::HashMap;

use crate::arith::{ideal_val, primes_up_to_norm, principal_generator, FracIdeal, ModRing, QuadElem, Residue};

use super::abelian::AbelianStructure;
use super::class::ClassGroup;
use super::ClassGroupError;

/// Cl_𝔪(F), realized as pairs (ideal class c, residue class r) where the
/// pair stands for R_c·(ρ) with ρ ≡ r mod* 𝔪 and R_c a fixed integral
/// representative of c prime to 𝔪.
#[derive(Clone, Debug)]
pub struct RayClassGroup {
    cl: ClassGroup,
    ring: ModRing,
    /// Canonical residue of each coset of (𝒪/𝔪)* modulo the image of 𝒪*.
    quot_reps: Vec<Residue>,
    quot_index: HashMap<Residue, usize>,
    reps: Vec<FracIdeal>,
    cocycle: Vec<Vec<usize>>,
    structure: AbelianStructure,
    gen_ideals: Vec<FracIdeal>,
}

impl RayClassGroup {
    pub fn new(modulus: &FracIdeal) -> Result<Self, ClassGroupError> {
        if !modulus.is_integral() {
            return Err(ClassGroupError::NonIntegralModulus);
        }
        let ctx = modulus.ctx();
        let cl = ClassGroup::new(ctx);
        let ring = ModRing::new(modulus)?;
        let uimg = ring.unit_image();
        let mut quot_reps = Vec::new();
        let mut quot_index = HashMap::new();
        let one = ring.one();
        for r in std::iter::once(one).chain(ring.units()) {
            if quot_index.contains_key(&r) {
                continue;
            }
            let idx = quot_reps.len();
            quot_reps.push(r);
            for u in &uimg {
                quot_index.insert(ring.mul(r, *u), idx);
            }
        }
        let mut this = RayClassGroup {
            reps: Vec::new(),
            cocycle: Vec::new(),
            structure: AbelianStructure::analyze(1, 0, |_, _| 0),
            gen_ideals: Vec::new(),
            cl,
            ring,
            quot_reps,
            quot_index,
        };
        this.reps = this.find_class_reps()?;
        let h = this.cl.h();
        let mut cocycle = vec![vec![0usize; h]; h];
        #[allow(clippy::needless_range_loop)]
        for c1 in 0..h {
            for c2 in 0..h {
                let c3 = this.cl.mul(c1, c2);
                let j = this.reps[c1].mul(&this.reps[c2]).div(&this.reps[c3]);
                let g = principal_generator(&j).ok_or(ClassGroupError::Internal("cocycle ideal not principal"))?;
                cocycle[c1][c2] = this.quot_of(&g)?;
            }
        }
        this.cocycle = cocycle;
        let n = this.order();
        let structure = AbelianStructure::analyze(n, 0, |x, y| this.mul(x, y));
        this.structure = structure;
        this.gen_ideals = this.find_gen_ideals()?;
        Ok(this)
    }

    fn find_class_reps(&self) -> Result<Vec<FracIdeal>, ClassGroupError> {
        let ctx = self.cl.ctx();
        let h = self.cl.h();
        let mut reps: Vec<Option<FracIdeal>> = vec![None; h];
        let mut found = 0;
        let mut n = 1u64;
        while found < h {
            for i in FracIdeal::integral_of_norm(ctx, n) {
                if !self.is_coprime(&i) {
                    continue;
                }
                let c = self.cl.class_of(&i);
                if reps[c].is_none() {
                    reps[c] = Some(i);
                    found += 1;
                }
            }
            n += 1;
            if n > 1_000_000 {
                return Err(ClassGroupError::Internal("no coprime class representatives"));
            }
        }
        Ok(reps.into_iter().map(Option::unwrap).collect())
    }

    fn find_gen_ideals(&self) -> Result<Vec<FracIdeal>, ClassGroupError> {
        let ctx = self.cl.ctx();
        let mut out = Vec::new();
        let mut bound = 200u64;
        for &g in &self.structure.gens {
            let mut chosen = None;
            while chosen.is_none() && bound <= 200_000 {
                for p in primes_up_to_norm(ctx, bound) {
                    if self.is_coprime(p.ideal()) && self.dlog_ideal(p.ideal())? == g {
                        chosen = Some(p.ideal().clone());
                        break;
                    }
                }
                if chosen.is_none() {
                    bound *= 4;
                }
            }
            out.push(match chosen {
                Some(i) => i,
                None => self.element_ideal(g)?,
            });
        }
        Ok(out)
    }

    fn quot_of(&self, z: &QuadElem) -> Result<usize, ClassGroupError> {
        let r = self.ring.reduce_star(z)?;
        Ok(self.quot_index[&r])
    }

    pub fn class_group(&self) -> &ClassGroup {
        &self.cl
    }

    /// Residues representing (𝒪/𝔪)* modulo the image of 𝒪*, i.e. the kernel
    /// of Cl_𝔪 → Cl; residue q is the ray element with index q.
    pub fn unit_quotient_reps(&self) -> &[Residue] {
        &self.quot_reps
    }

    pub fn modulus(&self) -> &FracIdeal {
        self.ring.modulus()
    }

    pub fn ring(&self) -> &ModRing {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.cl.h() * self.quot_reps.len()
    }

    /// Invariant factors d₁ | d₂ | ….
    pub fn structure(&self) -> &[u64] {
        &self.structure.invariants
    }

    /// Ideals representing the structural generators.
    pub fn gen_ideals(&self) -> &[FracIdeal] {
        &self.gen_ideals
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let q = self.quot_reps.len();
        let (c1, r1) = (x / q, x % q);
        let (c2, r2) = (y / q, y % q);
        let c = self.cl.mul(c1, c2);
        let g = self.quot_reps[self.cocycle[c1][c2]];
        let r = self.ring.mul(self.ring.mul(self.quot_reps[r1], self.quot_reps[r2]), g);
        c * q + self.quot_index[&r]
    }

    /// Image in Cl(F).
    pub fn project(&self, x: usize) -> usize {
        x / self.quot_reps.len()
    }

    pub fn is_coprime(&self, i: &FracIdeal) -> bool {
        self.ring.primes().iter().all(|(p, _)| ideal_val(i, p) == 0)
    }

    /// Ray class of an ideal prime to 𝔪.
    pub fn dlog_ideal(&self, i: &FracIdeal) -> Result<usize, ClassGroupError> {
        if !self.is_coprime(i) {
            return Err(ClassGroupError::NotCoprime);
        }
        let c = self.cl.class_of(i);
        let j = i.div(&self.reps[c]);
        let g = principal_generator(&j).ok_or(ClassGroupError::Internal("class lookup mismatch"))?;
        Ok(c * self.quot_reps.len() + self.quot_of(&g)?)
    }

    /// Exponent vector of an ideal on the structural generators.
    pub fn dlog(&self, i: &FracIdeal) -> Result<Vec<u64>, ClassGroupError> {
        Ok(self.structure.dlog(self.dlog_ideal(i)?).to_vec())
    }

    /// Exponent vector of a group element on the structural generators.
    pub fn element_dlog(&self, x: usize) -> &[u64] {
        self.structure.dlog(x)
    }

    /// An ideal in the given ray class.
    pub fn element_ideal(&self, x: usize) -> Result<FracIdeal, ClassGroupError> {
        let q = self.quot_reps.len();
        let rho = self.ring.lift(self.quot_reps[x % q]);
        Ok(self.reps[x / q].mul_elem(&rho)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{primes_above, FieldCtx};

    #[test]
    fn ray_orders_d67() {
        let k = FieldCtx::new(-67).unwrap();
        let o = RayClassGroup::new(&FracIdeal::unit(k)).unwrap();
        assert_eq!(o.order(), 1);
        let two = RayClassGroup::new(&FracIdeal::principal(&k.elem(2, 0)).unwrap()).unwrap();
        assert_eq!(two.order(), 3);
        let q = primes_above(k, 17).unwrap().remove(0);
        let r = RayClassGroup::new(q.ideal()).unwrap();
        assert_eq!(r.order(), 8);
        assert_eq!(r.structure(), &[8]);
        for (g, e) in r.gen_ideals().iter().zip(0..) {
            let mut want = vec![0u64; r.structure().len()];
            want[e] = 1;
            assert_eq!(r.dlog(g).unwrap(), want);
        }
    }

    #[test]
    fn ray_dlog_is_homomorphism_d20() {
        let k = FieldCtx::new(-20).unwrap();
        let m = primes_above(k, 3).unwrap().remove(0);
        let r = RayClassGroup::new(m.ideal()).unwrap();
        assert_eq!(r.order(), (2 * 2 / 2) * 2 / 2);
        let ps: Vec<_> = primes_up_to_norm(k, 60).into_iter().filter(|p| r.is_coprime(p.ideal())).collect();
        for p in &ps {
            for q in &ps {
                let lhs = r.dlog_ideal(&p.ideal().mul(q.ideal())).unwrap();
                let rhs = r.mul(r.dlog_ideal(p.ideal()).unwrap(), r.dlog_ideal(q.ideal()).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}
