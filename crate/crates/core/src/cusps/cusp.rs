//! Cusps of H(𝔟): the class map, equivalence witnesses, representatives,
//! stabilizers, and the pairing induced by the involution.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{coprime_split, principal_generator, small_elements, FieldCtx, FracIdeal, Mat2, QuadElem};
use crate::classgrp::ClassGroup;

use super::group::MaxArithGroup;
use super::CuspError;

/// A cusp [z₁ : z₂] of H(𝔟) with its attached ideal data.
#[derive(Clone, Debug)]
pub struct CuspClass {
    pub z1: QuadElem,
    pub z2: QuadElem,
    /// 𝔞 = z₁𝔟 + z₂𝒪.
    pub ideal: FracIdeal,
    pub class_index: usize,
    /// Translation lattice 𝔞⁻²𝔟 of the stabilizer.
    pub stabilizer: FracIdeal,
    pub partner: Option<usize>,
}

/// The ideal z₁𝔟 + z₂𝒪.
pub fn cusp_ideal(z1: &QuadElem, z2: &QuadElem, b: &FracIdeal) -> Result<FracIdeal, CuspError> {
    if z1.is_zero() && z2.is_zero() {
        return Err(CuspError::BothZero);
    }
    let ctx = b.ctx();
    let o = FracIdeal::unit(ctx);
    Ok(match (z1.is_zero(), z2.is_zero()) {
        (true, _) => o.mul_elem(z2)?,
        (_, true) => b.mul_elem(z1)?,
        _ => b.mul_elem(z1)?.add(&o.mul_elem(z2)?),
    })
}

/// j([z₁ : z₂]) as a class index.
pub fn j_map(z1: &QuadElem, z2: &QuadElem, b: &FracIdeal, cl: &ClassGroup) -> Result<usize, CuspError> {
    Ok(cl.class_of(&cusp_ideal(z1, z2, b)?))
}

/// A determinant-one matrix P with (z₁, z₂)·P = (1, 0) that maps the column
/// lattice 𝔞 ⊕ 𝔞⁻¹𝔟 onto 𝔟 ⊕ 𝒪, where 𝔞 = z₁𝔟 + z₂𝒪.
pub fn normalizing_matrix(z1: &QuadElem, z2: &QuadElem, b: &FracIdeal) -> Result<Mat2, CuspError> {
    let ctx = b.ctx();
    let a = cusp_ideal(z1, z2, b)?;
    let (u, v) = if z1.is_zero() {
        (ctx.zero(), z2.inv()?)
    } else if z2.is_zero() {
        (z1.inv()?, ctx.zero())
    } else {
        let ainv = a.inv();
        let i1_ideal = ainv.mul(b).mul_elem(z1)?;
        let i2_ideal = ainv.mul_elem(z2)?;
        let (i1, i2) = coprime_split(&i1_ideal, &i2_ideal).ok_or(CuspError::Internal("coprime split failed"))?;
        (i1.checked_div(z1)?, i2.checked_div(z2)?)
    };
    Ok(Mat2::new(u, -z2, v, z1.clone()))
}

fn row_times(z: (&QuadElem, &QuadElem), m: &Mat2) -> (QuadElem, QuadElem) {
    (&(z.0 * &m.a) + &(z.1 * &m.c), &(z.0 * &m.b) + &(z.1 * &m.d))
}

/// Whether [u] and [v] are H(𝔟)-equivalent, with σ ∈ H(𝔟) satisfying
/// u ∝ v·σ when they are.
pub fn cusp_equiv(u: (&QuadElem, &QuadElem), v: (&QuadElem, &QuadElem), b: &FracIdeal) -> Result<Option<Mat2>, CuspError> {
    let iu = cusp_ideal(u.0, u.1, b)?;
    let iv = cusp_ideal(v.0, v.1, b)?;
    let Some(lambda) = principal_generator(&iu.div(&iv)) else {
        return Ok(None);
    };
    let (v1, v2) = (v.0 * &lambda, v.1 * &lambda);
    let pv = normalizing_matrix(&v1, &v2, b)?;
    let pu = normalizing_matrix(u.0, u.1, b)?;
    let sigma = pv.mul(&pu.inv()?);
    let h = MaxArithGroup::new(b);
    if !h.contains(&sigma) || row_times((&v1, &v2), &sigma) != (u.0.clone(), u.1.clone()) {
        return Err(CuspError::Internal("equivalence witness failed verification"));
    }
    Ok(Some(sigma))
}

fn candidate_elements(ctx: FieldCtx, bound: i64) -> Vec<QuadElem> {
    let mut v = vec![ctx.zero()];
    v.extend(small_elements(&FracIdeal::unit(ctx), bound));
    v
}

/// One cusp per ideal class, with small integral coordinates, ordered by class index.
pub fn cusp_reps(b: &FracIdeal, cl: &ClassGroup) -> Result<Vec<CuspClass>, CuspError> {
    let ctx = b.ctx();
    let h = cl.h();
    let mut found: Vec<Option<(QuadElem, QuadElem, FracIdeal)>> = vec![None; h];
    // [0 : 1] always represents the principal class.
    found[cl.class_of(&FracIdeal::unit(ctx))] = Some((ctx.zero(), ctx.one(), FracIdeal::unit(ctx)));
    let mut count = 1;
    let mut bound = 2;
    // Pairs from earlier rounds were already tested; classes are cached per ideal.
    let mut tested: HashSet<(QuadElem, QuadElem)> = HashSet::new();
    let mut classes: HashMap<FracIdeal, usize> = HashMap::new();
    while count < h {
        let elems = candidate_elements(ctx, bound);
        // Candidates are integral, so norms and coordinates are integers.
        let norms: Vec<BigInt> = elems.iter().map(|z| z.norm().to_integer()).collect();
        let coords: Vec<[BigInt; 2]> = elems.iter().map(|z| [z.x().to_integer(), z.y().to_integer()]).collect();
        let mut pairs: Vec<(BigInt, usize, usize)> = Vec::new();
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                if i == 0 && j == 0 {
                    continue;
                }
                pairs.push((&norms[i] + &norms[j], j, i));
            }
        }
        pairs.sort_unstable();
        for (_, j, i) in pairs {
            let (z1, z2) = (&elems[i], &elems[j]);
            // A rational multiple of a smaller pair lies in the same class and comes later.
            let content = coords[i].iter().chain(&coords[j]).fold(BigInt::from(0), |g, c| g.gcd(c));
            if content > BigInt::from(1) || !tested.insert((z1.clone(), z2.clone())) {
                continue;
            }
            let a = cusp_ideal(z1, z2, b)?;
            let c = match classes.get(&a) {
                Some(&c) => c,
                None => {
                    let c = cl.class_of(&a);
                    classes.insert(a.clone(), c);
                    c
                }
            };
            if found[c].is_none() {
                found[c] = Some((z1.clone(), z2.clone(), a));
                count += 1;
                if count == h {
                    break;
                }
            }
        }
        bound += 2;
        if bound > 40 {
            return Err(CuspError::Internal("cusp search exhausted"));
        }
    }
    let mut out: Vec<CuspClass> = found
        .into_iter()
        .enumerate()
        .map(|(c, f)| {
            let (z1, z2, a) = f.unwrap();
            let stabilizer = a.pow(-2).mul(b);
            CuspClass { z1, z2, ideal: a, class_index: c, stabilizer, partner: None }
        })
        .collect();
    // Partner class [𝔞̄𝔟]; cusps are ordered by class index.
    for c in out.iter_mut() {
        c.partner = Some(cl.class_of(&c.ideal.conj().mul(b)));
    }
    Ok(out)
}

/// The lattice 𝔞⁻²𝔟 of translations fixing the cusp.
pub fn cusp_stabilizer(c: &CuspClass) -> &FracIdeal {
    &c.stabilizer
}

/// The stabilizer element P·(1, 0; t, 1)·P⁻¹ for a translation t.
pub fn stabilizer_element(c: &CuspClass, b: &FracIdeal, t: &QuadElem) -> Result<Mat2, CuspError> {
    let p = normalizing_matrix(&c.z1, &c.z2, b)?;
    Ok(p.mul(&Mat2::lower(t)).mul(&p.inv()?))
}

/// Image of a cusp under the involution: [z₁ : z₂] ↦ [z̄₂ : −Nm(𝔟)·z̄₁].
pub fn involution_image(z1: &QuadElem, z2: &QuadElem, b: &FracIdeal) -> (QuadElem, QuadElem) {
    let n = b.norm();
    (z2.conj(), -(z1.conj().scale(&n)))
}

/// Pairs (i, partner) under the involution. Errors with `SquareClass` when
/// [𝔟] is a square; the error carries the same pairing with fixed points allowed.
pub fn involution_pairs(b: &FracIdeal, cl: &ClassGroup) -> Result<Vec<(usize, usize)>, CuspError> {
    let reps = cusp_reps(b, cl)?;
    let pairs: Vec<(usize, usize)> = reps
        .iter()
        .map(|c| {
            let (w1, w2) = involution_image(&c.z1, &c.z2, b);
            let k = j_map(&w1, &w2, b, cl).expect("image of a cusp is a cusp");
            (c.class_index, k)
        })
        .collect();
    if cl.is_square(cl.class_of(b)) {
        return Err(CuspError::SquareClass { pairs });
    }
    Ok(pairs)
}

/// Data on the unipotent summand attached to one cusp.
#[derive(Clone, Debug, Serialize)]
pub struct SummandData {
    pub cusp: usize,
    /// HNF (den, a, b, c) of the translation lattice.
    pub lattice: [String; 4],
    pub partner: usize,
    /// The involution carries this lattice onto the partner cusp's lattice
    /// (checked as conj(L)/Nm(𝔟) = stabilizer lattice of the image cusp).
    pub involution_compatible: bool,
}

/// Unipotent summands of H(𝔟) with the involution action.
#[derive(Clone, Debug, Serialize)]
pub struct UnipotentMetadata {
    pub summands: Vec<SummandData>,
    /// Recorded bound on the abelianization kernel; not computed.
    pub kernel_bounds: &'static str,
}

pub fn unipotent_metadata(b: &FracIdeal, cl: &ClassGroup) -> Result<UnipotentMetadata, CuspError> {
    let reps = cusp_reps(b, cl)?;
    let nb = BigRational::from_integer(BigInt::from(1)) / b.norm();
    let mut summands = Vec::new();
    for c in &reps {
        let (w1, w2) = involution_image(&c.z1, &c.z2, b);
        let img = cusp_ideal(&w1, &w2, b)?;
        let img_lattice = img.pow(-2).mul(b);
        let moved = c.stabilizer.conj().scale(&nb)?;
        let (den, a, bb, cc) = c.stabilizer.hnf();
        summands.push(SummandData {
            cusp: c.class_index,
            lattice: [den.to_string(), a.to_string(), bb.to_string(), cc.to_string()],
            partner: cl.class_of(&img),
            involution_compatible: moved == img_lattice,
        });
    }
    Ok(UnipotentMetadata { summands, kernel_bounds: "6U' <= N <= U+ (recorded, not verified)" })
}
