//! The constant-term identity Ψ_φ(η·t) = Ψ_{w₀.φ}(η̄·A⁻¹·t) on a battery of
//! η in both Bruhat cells, and antisymmetry of the boundary cocycle
//! (Ψ_φ(η·t), −Ψ_{w₀.φ}(η·t)) under the cusp involution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{FieldCtx, Mat2, QuadElem};
use crate::characters::AlgValue;
use crate::classgrp::ClassGroup;
use crate::cusps::{cusp_reps, involution_image, j_map, normalizing_matrix};

use super::components::{ComponentRep, ComponentSummary};
use super::psi::{PsiContext, Twist};
use super::EisError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Cell {
    /// c = 0
    Upper,
    /// c ≠ 0
    Big,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CellCount {
    pub passed: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspEntry {
    pub cusp: usize,
    pub coords: [String; 2],
    pub partner: usize,
    pub c_hol: String,
    pub c_antihol: String,
    pub c_hol_approx: (f64, f64),
    pub c_antihol_approx: (f64, f64),
    pub antisymmetric: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityFailure {
    pub component: usize,
    pub eta: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub component: ComponentSummary,
    pub upper: CellCount,
    pub big: CellCount,
    pub cusps: Vec<CuspEntry>,
    pub antisymmetric: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantTermReport {
    pub field: i64,
    /// W(χ)·L(0, χ̄)/L(0, χ), equal to 1 for unramified χ.
    pub prefactor: String,
    pub components: Vec<ComponentReport>,
    pub failures: Vec<IdentityFailure>,
    pub all_pass: bool,
}

impl ConstantTermReport {
    /// Turns the first recorded failure into `IdentityFails`.
    pub fn require_all(&self) -> Result<(), EisError> {
        match self.failures.first() {
            None if self.all_pass => Ok(()),
            None => Err(EisError::IdentityFails { component: 0, eta: String::new(), trace: "antisymmetry".into() }),
            Some(f) => Err(EisError::IdentityFails { component: f.component, eta: f.eta.clone(), trace: format!("lhs [{}] rhs [{}]", f.lhs, f.rhs) }),
        }
    }
}

fn random_elem(ctx: FieldCtx, rng: &mut ChaCha8Rng, nonzero: bool) -> QuadElem {
    loop {
        let num = ctx.elem(rng.gen_range(-6..=6), rng.gen_range(-6..=6));
        if nonzero && num.is_zero() {
            continue;
        }
        let den = ctx.elem(rng.gen_range(1..=12), 0);
        return num.checked_div(&den).expect("nonzero denominator");
    }
}

/// `per_cell` matrices with c = 0 followed by `per_cell` with c ≠ 0.
pub fn sample_battery(ctx: FieldCtx, per_cell: usize, seed: u64) -> Vec<(Cell, Mat2)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(2 * per_cell);
    for _ in 0..per_cell {
        let a = random_elem(ctx, &mut rng, true);
        let b = random_elem(ctx, &mut rng, false);
        let d = random_elem(ctx, &mut rng, true);
        out.push((Cell::Upper, Mat2::new(a, b, ctx.zero(), d)));
    }
    while out.len() < 2 * per_cell {
        let m = Mat2::new(
            random_elem(ctx, &mut rng, false),
            random_elem(ctx, &mut rng, false),
            random_elem(ctx, &mut rng, true),
            random_elem(ctx, &mut rng, false),
        );
        if !m.det().is_zero() {
            out.push((Cell::Big, m));
        }
    }
    out
}

fn negate(v: &AlgValue) -> AlgValue {
    v.mul(&AlgValue::root_of_unity(v.ctx(), 1, 2))
}

/// A⁻¹ for H(𝔟) components and the identity on SL₂(𝒪) components.
fn twist_matrix(comp: &ComponentRep) -> Result<Mat2, EisError> {
    if comp.is_full_level() {
        Ok(Mat2::identity(comp.a.ctx()))
    } else {
        Ok(comp.group.a_matrix().inv()?)
    }
}

/// (c_hol, c_antihol) at the boundary component of η.
fn cocycle(ctx: &PsiContext, eta: &Mat2, comp: &ComponentRep) -> Result<(AlgValue, AlgValue), EisError> {
    let hol = ctx.eval(eta, &comp.t, Twist::Id)?.value;
    let anti = negate(&ctx.eval(eta, &comp.t, Twist::W0)?.value);
    Ok((hol, anti))
}

fn check_component(ctx: &PsiContext, comp: &ComponentRep, battery: &[(Cell, Mat2)]) -> Result<(ComponentReport, Vec<IdentityFailure>), EisError> {
    let field = comp.a.ctx();
    let a_inv = twist_matrix(comp)?;
    let outcomes: Vec<Result<Option<IdentityFailure>, EisError>> = battery
        .par_iter()
        .map(|(_, eta)| {
            let lhs = ctx.eval(eta, &comp.t, Twist::Id)?;
            let rhs = ctx.eval(&eta.conj().mul(&a_inv), &comp.t, Twist::W0)?;
            Ok(if lhs.value.eq_exact(&rhs.value) {
                None
            } else {
                Some(IdentityFailure { component: comp.index, eta: eta.to_string(), lhs: lhs.trace(), rhs: rhs.trace() })
            })
        })
        .collect();
    let mut upper = CellCount::default();
    let mut big = CellCount::default();
    let mut failures = Vec::new();
    for ((cell, _), outcome) in battery.iter().zip(outcomes) {
        let count = match cell {
            Cell::Upper => &mut upper,
            Cell::Big => &mut big,
        };
        count.total += 1;
        match outcome? {
            None => count.passed += 1,
            Some(f) => failures.push(f),
        }
    }
    let cl = ClassGroup::new(field);
    let w0 = Mat2::weyl(field);
    let mut cusps = Vec::new();
    for c in cusp_reps(&comp.a, &cl)? {
        let p = normalizing_matrix(&c.z1, &c.z2, &comp.a)?;
        let eta = w0.mul(&p.inv()?);
        let partner_eta = eta.conj().mul(&a_inv);
        let (w1, w2) = if comp.is_full_level() { (c.z1.conj(), c.z2.conj()) } else { involution_image(&c.z1, &c.z2, &comp.a) };
        let partner = j_map(&w1, &w2, &comp.a, &cl)?;
        let (hol, anti) = cocycle(ctx, &eta, comp)?;
        let (hol_p, anti_p) = cocycle(ctx, &partner_eta, comp)?;
        let antisymmetric = hol.eq_exact(&negate(&anti_p)) && anti.eq_exact(&negate(&hol_p));
        cusps.push(CuspEntry {
            cusp: c.class_index,
            coords: [c.z1.to_string(), c.z2.to_string()],
            partner,
            c_hol: hol.to_string(),
            c_antihol: anti.to_string(),
            c_hol_approx: hol.to_c64(),
            c_antihol_approx: anti.to_c64(),
            antisymmetric,
        });
    }
    let antisymmetric = cusps.iter().all(|c| c.antisymmetric);
    Ok((ComponentReport { component: comp.summary(), upper, big, cusps, antisymmetric }, failures))
}

/// Runs the identity battery and the cusp antisymmetry check on every
/// component. Requires χ = φ₁/φ₂ unramified, where the prefactor is 1.
pub fn constant_term_check(ctx: &PsiContext, comps: &[ComponentRep], battery: &[(Cell, Mat2)]) -> Result<ConstantTermReport, EisError> {
    if !ctx.ratio_unramified() {
        let v = ctx.level_primes().first().map(|p| p.to_string()).unwrap_or_default();
        return Err(EisError::UndefinedAtLevel(v));
    }
    let mut components = Vec::with_capacity(comps.len());
    let mut failures = Vec::new();
    for comp in comps {
        let (report, f) = check_component(ctx, comp, battery)?;
        components.push(report);
        failures.extend(f);
    }
    let all_pass = failures.is_empty() && components.iter().all(|c| c.antisymmetric);
    let field = ctx.phi1().ctx().disc();
    Ok(ConstantTermReport { field, prefactor: "1".into(), components, failures, all_pass })
}
