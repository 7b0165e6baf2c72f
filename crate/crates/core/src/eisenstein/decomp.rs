//! Bruhat decomposition in GL₂(F) and Iwasawa decomposition in GL₂(F_v),
//! both verified by exact recomposition.

use crate::arith::{Mat2, PrimeIdeal, QuadElem};

use super::EisError;

/// g = u·t (c = 0) or g = u₁·t·w₀·u₂ (c ≠ 0), with u, u₁, u₂ unipotent
/// upper triangular and t diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Bruhat {
    Upper { u: Mat2, t: Mat2 },
    Big { u1: Mat2, t: Mat2, w: Mat2, u2: Mat2 },
}

impl Bruhat {
    pub fn recompose(&self) -> Mat2 {
        match self {
            Bruhat::Upper { u, t } => u.mul(t),
            Bruhat::Big { u1, t, w, u2 } => u1.mul(t).mul(w).mul(u2),
        }
    }
}

pub fn bruhat_decompose(g: &Mat2) -> Result<Bruhat, EisError> {
    let det = g.det();
    if det.is_zero() {
        return Err(EisError::Singular);
    }
    let out = if g.c.is_zero() {
        let u = Mat2::upper(&g.b.checked_div(&g.d)?);
        Bruhat::Upper { u, t: Mat2::diag(&g.a, &g.d) }
    } else {
        let u1 = Mat2::upper(&g.a.checked_div(&g.c)?);
        let u2 = Mat2::upper(&g.d.checked_div(&g.c)?);
        let t = Mat2::diag(&(-det.checked_div(&g.c)?), &(-&g.c));
        Bruhat::Big { u1, t, w: Mat2::weyl(g.ctx()), u2 }
    };
    if &out.recompose() != g {
        return Err(EisError::Recomposition("Bruhat"));
    }
    Ok(out)
}

/// g = b·k in GL₂(F_v) with b upper triangular and k ∈ SL₂(𝒪_v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIwasawa {
    pub b: Mat2,
    pub k: Mat2,
}

fn val(v: &PrimeIdeal, z: &QuadElem) -> Option<i64> {
    if z.is_zero() {
        None
    } else {
        v.val_elem(z).ok()
    }
}

fn integral_at(v: &PrimeIdeal, z: &QuadElem) -> bool {
    val(v, z).is_none_or(|k| k >= 0)
}

/// For g ∈ GL₂(𝒪_v), b = diag(1, det g). Otherwise a right column operation
/// clears the (2,1) entry: k = (1, 0; c/d, 1) when ord_v(c) ≥ ord_v(d), and
/// k = (0, 1; −1, −d/c) otherwise.
pub fn iwasawa_local(g: &Mat2, v: &PrimeIdeal) -> Result<LocalIwasawa, EisError> {
    let det = g.det();
    if det.is_zero() {
        return Err(EisError::Singular);
    }
    let ctx = g.ctx();
    let (b, k) = if g.entries().iter().all(|z| integral_at(v, z)) && v.val_elem(&det)? == 0 {
        (Mat2::diag(&ctx.one(), &det), Mat2::diag(&ctx.one(), &det.inv()?).mul(g))
    } else {
        let use_lower = match (val(v, &g.c), val(v, &g.d)) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(vc), Some(vd)) => vc >= vd,
        };
        if use_lower {
            let r = g.c.checked_div(&g.d)?;
            let b = Mat2::new(&g.a - &(&g.b * &r), g.b.clone(), ctx.zero(), g.d.clone());
            (b, Mat2::lower(&r))
        } else {
            let r = g.d.checked_div(&g.c)?;
            let b = Mat2::new(-det.checked_div(&g.c)?, -&g.a, ctx.zero(), -&g.c);
            (b, Mat2::new(ctx.zero(), ctx.one(), -ctx.one(), -r))
        }
    };
    if &b.mul(&k) != g || !k.det().is_one() || !k.entries().iter().all(|z| integral_at(v, z)) {
        return Err(EisError::Recomposition("Iwasawa"));
    }
    Ok(LocalIwasawa { b, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{primes_above, FieldCtx};

    #[test]
    fn weyl_element() {
        let k = FieldCtx::new(-67).unwrap();
        let w = Mat2::weyl(k);
        match bruhat_decompose(&w).unwrap() {
            Bruhat::Big { u1, t, u2, .. } => {
                assert_eq!(u1, Mat2::identity(k));
                assert_eq!(u2, Mat2::identity(k));
                assert_eq!(t, Mat2::identity(k));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn weyl_times_unipotent() {
        let k = FieldCtx::new(-67).unwrap();
        let p2 = primes_above(k, 2).unwrap().remove(0);
        let e = k.elem(1, 0).checked_div(&k.elem(2, 0)).unwrap();
        let g = Mat2::weyl(k).mul(&Mat2::upper(&e));
        let LocalIwasawa { b, .. } = iwasawa_local(&g, &p2).unwrap();
        assert!(b.c.is_zero());
        assert_eq!(p2.val_elem(&b.a).unwrap(), 1);
        assert_eq!(p2.val_elem(&b.d).unwrap(), -1);
    }
}
