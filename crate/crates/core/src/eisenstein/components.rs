//! Connected components of the level-K_f locally symmetric space, indexed by
//! t = diag(γ·a·b, b) with γ in the unit kernel of Cl_𝔪 → Cl, a over
//! Cl/Cl², and b with b² over Cl².

use serde::Serialize;

use crate::arith::{factor_ideal, FieldCtx, FracIdeal, PrimeIdeal, QuadElem};
use crate::classgrp::{ClassGroup, RayClassGroup};
use crate::cusps::MaxArithGroup;

use super::idele::{DiagIdele, FinIdele};
use super::EisError;

#[derive(Clone, Debug)]
pub struct ComponentRep {
    pub index: usize,
    /// Unit component at the level places (a lift of a residue mod 𝔪).
    pub gamma: QuadElem,
    /// Cl/Cl² representative; 𝒪 or a non-square class.
    pub a: FracIdeal,
    pub b: FracIdeal,
    /// The arithmetic group H(a) of the component.
    pub group: MaxArithGroup,
    pub t: DiagIdele,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentSummary {
    pub index: usize,
    pub gamma: String,
    pub a: String,
    pub b: String,
    pub a_is_trivial: bool,
}

impl ComponentRep {
    pub fn summary(&self) -> ComponentSummary {
        ComponentSummary {
            index: self.index,
            gamma: self.gamma.to_string(),
            a: self.a.to_string(),
            b: self.b.to_string(),
            a_is_trivial: self.a.is_unit_ideal(),
        }
    }

    pub fn is_full_level(&self) -> bool {
        self.a.is_unit_ideal()
    }
}

/// Smallest-norm integral ideal in each class, prime to the level.
fn class_reps(ctx: FieldCtx, cl: &ClassGroup, level: &[PrimeIdeal]) -> Vec<FracIdeal> {
    let h = cl.h();
    let mut reps: Vec<Option<FracIdeal>> = vec![None; h];
    let mut found = 0;
    let mut n = 1u64;
    while found < h {
        for i in FracIdeal::integral_of_norm(ctx, n) {
            if level.iter().any(|p| crate::arith::ideal_val(&i, p) != 0) {
                continue;
            }
            let c = cl.class_of(&i);
            if reps[c].is_none() {
                reps[c] = Some(i);
                found += 1;
            }
        }
        n += 1;
    }
    reps.into_iter().map(Option::unwrap).collect()
}

/// One representative per component; the count equals #Cl_𝔪.
pub fn component_reps(level: &FracIdeal) -> Result<Vec<ComponentRep>, EisError> {
    let ctx = level.ctx();
    let ray = RayClassGroup::new(level)?;
    let cl = ray.class_group();
    let h = cl.h();
    let level_primes: Vec<PrimeIdeal> = factor_ideal(level)?.into_values().map(|(p, _)| p).collect();
    let reps = class_reps(ctx, cl, &level_primes);
    let identity = cl.class_of(&FracIdeal::unit(ctx));
    let squares: Vec<usize> = {
        let mut s: Vec<usize> = (0..h).map(|c| cl.mul(c, c)).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let coset_key = |c: usize| squares.iter().map(|&s| cl.mul(c, s)).min().unwrap();
    let mut a_classes: Vec<usize> = vec![identity];
    for c in 0..h {
        if a_classes.iter().all(|&x| coset_key(x) != coset_key(c)) {
            a_classes.push(c);
        }
    }
    let mut b_classes: Vec<usize> = Vec::new();
    let mut seen = Vec::new();
    for c in std::iter::once(identity).chain(0..h) {
        let s = cl.mul(c, c);
        if !seen.contains(&s) {
            seen.push(s);
            b_classes.push(c);
        }
    }
    let gammas: Vec<QuadElem> = ray.unit_quotient_reps().iter().map(|r| ray.ring().lift(*r)).collect();
    let mut out = Vec::new();
    for &ac in &a_classes {
        let a = if ac == identity { FracIdeal::unit(ctx) } else { reps[ac].clone() };
        let a_idele = FinIdele::from_ideal(&a)?;
        for &bc in &b_classes {
            let b = if bc == identity { FracIdeal::unit(ctx) } else { reps[bc].clone() };
            let b_idele = FinIdele::from_ideal(&b)?;
            for g in &gammas {
                let gamma = FinIdele::at_places(g, &level_primes);
                let t = DiagIdele { t1: gamma.mul(&a_idele).mul(&b_idele), t2: b_idele.clone() };
                out.push(ComponentRep { index: out.len(), gamma: g.clone(), a: a.clone(), b: b.clone(), group: MaxArithGroup::new(&a), t });
            }
        }
    }
    if out.len() != ray.order() {
        return Err(EisError::ComponentCount { found: out.len(), expected: ray.order() });
    }
    Ok(out)
}
