//! Rank-two lattice utilities: reduction, short vectors, principal generators,
//! and integer solutions of ℤ-linear combinations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::QuadElem;
use super::ideal::{FracIdeal, IntVec};

fn bilinear(u: &QuadElem, v: &QuadElem) -> BigRational {
    (u * &v.conj()).trace() / BigRational::from_integer(2.into())
}

fn round_rat(r: &BigRational) -> BigInt {
    let two = BigRational::from_integer(2.into());
    ((r * &two + BigRational::one()) / two).floor().to_integer()
}

/// Lagrange–Gauss reduction of a ℤ-basis with respect to the norm form.
pub fn reduce_basis(basis: [QuadElem; 2]) -> [QuadElem; 2] {
    let [mut u, mut v] = basis;
    if v.norm() < u.norm() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let mu = round_rat(&(bilinear(&u, &v) / u.norm()));
        if mu.is_zero() {
            break;
        }
        v = &v - &u.scale(&BigRational::from_integer(mu));
        if v.norm() < u.norm() {
            std::mem::swap(&mut u, &mut v);
        } else {
            break;
        }
    }
    [u, v]
}

/// A generator of I if I is principal.
pub fn principal_generator(i: &FracIdeal) -> Option<QuadElem> {
    let [u, _] = reduce_basis(i.basis());
    if u.norm() == i.norm() {
        Some(u)
    } else {
        None
    }
}

/// Nonzero elements m·e₁ + n·e₂ of I with |m|, |n| ≤ bound over a reduced
/// basis, sorted by (norm, m, n).
pub fn small_elements(i: &FracIdeal, bound: i64) -> Vec<QuadElem> {
    let [u, v] = reduce_basis(i.basis());
    let mut out: Vec<(BigRational, i64, i64, QuadElem)> = Vec::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            if m == 0 && n == 0 {
                continue;
            }
            let z = &u.scale(&BigRational::from_integer(m.into())) + &v.scale(&BigRational::from_integer(n.into()));
            out.push((z.norm(), m, n, z));
        }
    }
    out.sort_by(|a, b| (&a.0, a.1, a.2).cmp(&(&b.0, b.1, b.2)));
    out.into_iter().map(|t| t.3).collect()
}

/// First element of I (by norm, growing search box) satisfying `pred`.
pub fn find_element<F: FnMut(&QuadElem) -> bool>(i: &FracIdeal, max_bound: i64, mut pred: F) -> Option<QuadElem> {
    let mut bound = 3;
    loop {
        // Each larger box is re-scanned from the start so the result depends
        // only on the norm ordering.
        if let Some(z) = small_elements(i, bound).into_iter().find(|z| pred(z)) {
            return Some(z);
        }
        if bound >= max_bound {
            return None;
        }
        bound = (bound * 2).min(max_bound);
    }
}

/// Integer coefficients expressing `target` as a ℤ-combination of `vs`.
pub fn solve_combination(vs: &[IntVec], target: &IntVec) -> Option<Vec<BigInt>> {
    let k = vs.len();
    // Rows: (vector, coefficient row).
    let mut rows: Vec<(IntVec, Vec<BigInt>)> = vs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut c = vec![BigInt::zero(); k];
            c[i] = BigInt::one();
            (v.clone(), c)
        })
        .collect();
    let sub = |rows: &mut Vec<(IntVec, Vec<BigInt>)>, i: usize, piv: usize, q: &BigInt| {
        let (pv, pc) = rows[piv].clone();
        rows[i].0 .0 -= q * &pv.0;
        rows[i].0 .1 -= q * &pv.1;
        for (dst, src) in rows[i].1.iter_mut().zip(&pc) {
            *dst -= q * src;
        }
    };
    let euclid = |rows: &mut Vec<(IntVec, Vec<BigInt>)>, idx: &[usize], second: bool| -> Option<usize> {
        let key = |r: &(IntVec, Vec<BigInt>)| if second { r.0 .1.clone() } else { r.0 .0.clone() };
        loop {
            let nz: Vec<usize> = idx.iter().copied().filter(|&i| !key(&rows[i]).is_zero()).collect();
            if nz.len() <= 1 {
                return nz.first().copied();
            }
            let piv = *nz.iter().min_by_key(|&&i| key(&rows[i]).abs()).unwrap();
            let pk = key(&rows[piv]);
            for &i in &nz {
                if i != piv {
                    let q = key(&rows[i]).div_floor(&pk);
                    sub(rows, i, piv, &q);
                }
            }
        }
    };
    let all: Vec<usize> = (0..k).collect();
    let ypiv = euclid(&mut rows, &all, true);
    let rest: Vec<usize> = all.iter().copied().filter(|&i| Some(i) != ypiv).collect();
    let xpiv = euclid(&mut rows, &rest, false);
    let mut coeff = vec![BigInt::zero(); k];
    let mut rem = target.clone();
    if let Some(p) = ypiv {
        let (pv, pc) = &rows[p];
        if !rem.1.is_multiple_of(&pv.1) {
            return None;
        }
        let m = &rem.1 / &pv.1;
        rem.0 -= &m * &pv.0;
        rem.1 = BigInt::zero();
        for j in 0..k {
            coeff[j] += &m * &pc[j];
        }
    } else if !rem.1.is_zero() {
        return None;
    }
    if !rem.0.is_zero() {
        let p = xpiv?;
        let (pv, pc) = &rows[p];
        if !rem.0.is_multiple_of(&pv.0) {
            return None;
        }
        let m = &rem.0 / &pv.0;
        for j in 0..k {
            coeff[j] += &m * &pc[j];
        }
    }
    Some(coeff)
}

/// For coprime integral ideals I, J, elements i ∈ I and j ∈ J with i + j = 1.
pub fn coprime_split(i: &FracIdeal, j: &FracIdeal) -> Option<(QuadElem, QuadElem)> {
    let ctx = i.ctx();
    let bi = i.basis();
    let bj = j.basis();
    let den = bi.iter().chain(bj.iter()).fold(BigInt::one(), |acc, z| acc.lcm(&z.denominator()));
    let vs: Vec<IntVec> = bi.iter().chain(bj.iter()).map(|z| z.scaled_coords(&den)).collect();
    let coeff = solve_combination(&vs, &(den.clone(), BigInt::zero()))?;
    let mut x = ctx.zero();
    for t in 0..2 {
        x = &x + &bi[t].scale(&BigRational::from_integer(coeff[t].clone()));
    }
    let y = &ctx.one() - &x;
    debug_assert!(j.contains(&y));
    Some((x, y))
}
