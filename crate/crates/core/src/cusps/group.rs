//! The groups H(𝔟) = {(a b; c d) : a, d ∈ 𝒪, b ∈ 𝔟, c ∈ 𝔟⁻¹, ad − bc = 1}.

use num_rational::BigRational;
use num_traits::One;

use crate::arith::{FracIdeal, Mat2, QuadElem};

#[derive(Clone, Debug)]
pub struct MaxArithGroup {
    b: FracIdeal,
    b_inv: FracIdeal,
    o: FracIdeal,
}

impl MaxArithGroup {
    pub fn new(b: &FracIdeal) -> Self {
        MaxArithGroup { b: b.clone(), b_inv: b.inv(), o: FracIdeal::unit(b.ctx()) }
    }

    pub fn ideal(&self) -> &FracIdeal {
        &self.b
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        m.det().is_one() && self.o.contains(&m.a) && self.o.contains(&m.d) && self.b.contains(&m.b) && self.b_inv.contains(&m.c)
    }

    /// The twist A = (0, 1; −Nm(𝔟)⁻¹, 0).
    pub fn a_matrix(&self) -> Mat2 {
        let ctx = self.b.ctx();
        let ninv = QuadElem::from_rational(ctx, BigRational::one() / self.b.norm());
        Mat2::new(ctx.zero(), ctx.one(), -ninv, ctx.zero())
    }

    /// The involution g ↦ A·ḡ·A⁻¹, which preserves H(𝔟).
    pub fn involution(&self, g: &Mat2) -> Mat2 {
        let a = self.a_matrix();
        a.mul(&g.conj()).mul(&a.inv().expect("A is invertible"))
    }
}
