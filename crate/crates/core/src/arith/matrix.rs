//! 2×2 matrices over the field.

use std::fmt;

use super::field::{FieldCtx, QuadElem};
use super::ArithError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: QuadElem,
    pub b: QuadElem,
    pub c: QuadElem,
    pub d: QuadElem,
}

impl Mat2 {
    pub fn new(a: QuadElem, b: QuadElem, c: QuadElem, d: QuadElem) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_ints(ctx: FieldCtx, e: [[i64; 2]; 4]) -> Self {
        Mat2::new(ctx.elem(e[0][0], e[0][1]), ctx.elem(e[1][0], e[1][1]), ctx.elem(e[2][0], e[2][1]), ctx.elem(e[3][0], e[3][1]))
    }

    pub fn identity(ctx: FieldCtx) -> Self {
        Mat2::new(ctx.one(), ctx.zero(), ctx.zero(), ctx.one())
    }

    pub fn scalar(z: &QuadElem) -> Self {
        let ctx = z.ctx();
        Mat2::new(z.clone(), ctx.zero(), ctx.zero(), z.clone())
    }

    pub fn diag(x: &QuadElem, y: &QuadElem) -> Self {
        let ctx = x.ctx();
        Mat2::new(x.clone(), ctx.zero(), ctx.zero(), y.clone())
    }

    /// Upper unipotent (1, x; 0, 1).
    pub fn upper(x: &QuadElem) -> Self {
        let ctx = x.ctx();
        Mat2::new(ctx.one(), x.clone(), ctx.zero(), ctx.one())
    }

    /// Lower unipotent (1, 0; x, 1).
    pub fn lower(x: &QuadElem) -> Self {
        let ctx = x.ctx();
        Mat2::new(ctx.one(), ctx.zero(), x.clone(), ctx.one())
    }

    /// The Weyl element (0, 1; −1, 0).
    pub fn weyl(ctx: FieldCtx) -> Self {
        Mat2::new(ctx.zero(), ctx.one(), -ctx.one(), ctx.zero())
    }

    pub fn ctx(&self) -> FieldCtx {
        self.a.ctx()
    }

    pub fn det(&self) -> QuadElem {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    pub fn inv(&self) -> Result<Mat2, ArithError> {
        let di = self.det().inv()?;
        Ok(Mat2::new(&self.d * &di, -(&self.b * &di), -(&self.c * &di), &self.a * &di))
    }

    pub fn conj(&self) -> Mat2 {
        Mat2::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }

    pub fn scale(&self, z: &QuadElem) -> Mat2 {
        Mat2::new(&self.a * z, &self.b * z, &self.c * z, &self.d * z)
    }

    pub fn entries(&self) -> [&QuadElem; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Action on a column vector.
    pub fn apply(&self, v: &(QuadElem, QuadElem)) -> (QuadElem, QuadElem) {
        (&(&self.a * &v.0) + &(&self.b * &v.1), &(&self.c * &v.0) + &(&self.d * &v.1))
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
