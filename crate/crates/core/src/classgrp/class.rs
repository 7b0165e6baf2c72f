//! The ideal class group via reduced forms.

use std::collections::HashMap;

use crate::arith::{FieldCtx, FracIdeal};

use super::abelian::AbelianStructure;
use super::form::{reduced_forms, QuadForm};

/// Cl(F) with elements indexed by reduced forms (index 0 is principal).
#[derive(Clone, Debug)]
pub struct ClassGroup {
    ctx: FieldCtx,
    forms: Vec<QuadForm>,
    index: HashMap<QuadForm, usize>,
    table: Vec<Vec<usize>>,
    structure: AbelianStructure,
    squares: Vec<bool>,
}

impl ClassGroup {
    pub fn new(ctx: FieldCtx) -> Self {
        let forms = reduced_forms(ctx.disc());
        let index: HashMap<QuadForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let h = forms.len();
        let table: Vec<Vec<usize>> = (0..h).map(|i| (0..h).map(|j| index[&forms[i].compose(&forms[j]).expect("same discriminant")]).collect()).collect();
        let structure = AbelianStructure::analyze(h, 0, |x, y| table[x][y]);
        let mut squares = vec![false; h];
        for i in 0..h {
            squares[table[i][i]] = true;
        }
        ClassGroup { ctx, forms, index, table, structure, squares }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn h(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    pub fn structure(&self) -> &[u64] {
        &self.structure.invariants
    }

    /// Generator forms, one per invariant factor.
    pub fn gens(&self) -> Vec<QuadForm> {
        self.structure.gens.iter().map(|&i| self.forms[i]).collect()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inv(&self, x: usize) -> usize {
        self.index[&self.forms[x].inverse()]
    }

    pub fn pow(&self, x: usize, e: i64) -> usize {
        let base = if e < 0 { self.inv(x) } else { x };
        (0..e.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn dlog(&self, x: usize) -> &[u64] {
        self.structure.dlog(x)
    }

    pub fn is_square(&self, x: usize) -> bool {
        self.squares[x]
    }

    pub fn index_of_form(&self, f: &QuadForm) -> Option<usize> {
        self.index.get(&f.reduce()).copied()
    }

    /// Class index of a fractional ideal.
    pub fn class_of(&self, i: &FracIdeal) -> usize {
        self.index[&QuadForm::from_ideal(i)]
    }

    /// Class index together with whether the class lies in Cl(F)².
    pub fn ideal_class_of(&self, i: &FracIdeal) -> (usize, bool) {
        let c = self.class_of(i);
        (c, self.squares[c])
    }

    /// Integral ideal of the class given by its reduced form.
    pub fn representative(&self, x: usize) -> FracIdeal {
        self.forms[x].to_ideal(self.ctx)
    }
}
