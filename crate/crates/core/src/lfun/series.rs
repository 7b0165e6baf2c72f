//! Smoothed evaluation of completed Hecke L-series via incomplete gamma
//! functions, and the root number.

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::arith::FracIdeal;
use crate::characters::HeckeChar;
use crate::classgrp::ClassGroup;
use crate::numeric::{bits_for_digits, pi, Complex};

use super::coeffs::dirichlet_coeffs;
use super::gamma::upper_gamma;
use super::LfunError;

/// Split points used for the main value, the residual, and the numeric root
/// number solve.
const SPLIT_RESIDUAL: f64 = 1.15;
const SPLIT_SOLVE: f64 = 1.2;
const SOLVE_POINT: f64 = 0.5;
/// Smallest effective split factor applied to x_n in any sum.
const MIN_SPLIT: f64 = 1.0 / SPLIT_SOLVE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RootMode {
    Formula,
    Numeric,
}

/// Completed L-series Λ(s) = (√A/2π)^s Γ(s + κ) L(s) with Λ(s) = W·Λ̄(1 − s).
#[derive(Clone, Debug)]
pub struct LSeries {
    coeffs: Vec<Complex>,
    conductor: u64,
    /// 2κ = |a − b|.
    shift2: u32,
    root_number: Complex,
    root_source: RootMode,
    /// Residue h/w of Λ at s = 1 for the trivial character.
    polar: Option<Float>,
    digits: u32,
    prec: u32,
}

/// Value of the continued L-series at a real point.
#[derive(Clone, Debug)]
pub struct LValue {
    pub s: Float,
    pub lambda: Complex,
    pub value: Complex,
    pub residual: Float,
}

/// Number of coefficients needed so the smoothing tail is below 10^{-digits}.
pub fn required_terms(digits: u32, conductor: u64) -> usize {
    let step = 2.0 * std::f64::consts::PI / (conductor as f64).sqrt();
    let target = (f64::from(digits) + 15.0) * std::f64::consts::LN_10;
    let mut n = (target / (MIN_SPLIT * step)).ceil() as usize;
    // Polynomial factors in front of the exponential.
    n += (8.0 * (n as f64).ln().max(1.0) / (MIN_SPLIT * step)).ceil() as usize;
    n.max(16)
}

impl LSeries {
    /// Series of χ̃ with the conductor |d|·Nm(𝔪) and the default root number
    /// (formula for unramified χ, numeric otherwise).
    pub fn for_character(chi: &HeckeChar, digits: u32, max_coeffs: usize) -> Result<LSeries, LfunError> {
        let ctx = chi.ctx();
        let nm = chi.modulus().norm().to_integer();
        let conductor = u64::try_from(nm * num_bigint::BigInt::from(-ctx.disc())).map_err(|_| LfunError::ConductorTooLarge)?;
        let needed = required_terms(digits, conductor);
        if needed > max_coeffs {
            return Err(LfunError::PrecisionUnreachable { needed, max: max_coeffs });
        }
        let prec = bits_for_digits(digits) + 32;
        let coeffs = dirichlet_coeffs(chi, needed, prec)?;
        let (a, b) = chi.inf_type();
        let shift2 = (a - b).unsigned_abs() as u32;
        let polar = if is_trivial(chi) {
            let cl = ClassGroup::new(ctx);
            Some(Float::with_val(prec, cl.h()) / ctx.unit_count())
        } else {
            None
        };
        let mut series = LSeries { coeffs, conductor, shift2, root_number: Complex::one(prec), root_source: RootMode::Numeric, polar, digits, prec };
        match root_number_formula(chi, prec) {
            Ok(w) => {
                series.root_number = w;
                series.root_source = RootMode::Formula;
            }
            Err(LfunError::RamifiedFormulaUnsupported) => {
                series.root_number = series.solve_root_number();
            }
            Err(e) => return Err(e),
        }
        Ok(series)
    }

    /// Series from explicit data; a_0 is ignored.
    pub fn from_parts(coeffs: Vec<Complex>, conductor: u64, shift2: u32, root_number: Complex, polar: Option<Float>, digits: u32) -> LSeries {
        let prec = coeffs.first().map(|c| c.prec()).unwrap_or_else(|| bits_for_digits(digits) + 32);
        LSeries { coeffs, conductor, shift2, root_number, root_source: RootMode::Numeric, polar, digits, prec }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Number of Dirichlet coefficients summed.
    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn root_number(&self) -> &Complex {
        &self.root_number
    }

    pub fn root_source(&self) -> RootMode {
        self.root_source
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same series truncated after `n` coefficients.
    pub fn truncated(&self, n: usize) -> LSeries {
        let mut s = self.clone();
        s.coeffs.truncate(n + 1);
        s
    }

    fn kappa(&self) -> Float {
        Float::with_val(self.prec, self.shift2) / 2u32
    }

    /// 2π/√A.
    fn x_step(&self) -> Float {
        let p = self.prec;
        Float::with_val(p, pi(p) * 2u32) / Float::with_val(p, self.conductor).sqrt()
    }

    /// Σ a_n x_n^{-s} Γ(κ + s, x_n·c) and Σ ā_n x_n^{s-1} Γ(κ + 1 − s, x_n/c).
    fn partial_sums(&self, s: &Float, c: &Float) -> (Complex, Complex) {
        let p = self.prec;
        let step = self.x_step();
        let kappa = self.kappa();
        let s1 = Float::with_val(p, &kappa + s);
        let s2 = Float::with_val(p, &kappa + 1u32) - s;
        let sm1 = Float::with_val(p, s - 1u32);
        let terms: Vec<(Complex, Complex)> = (1..self.coeffs.len())
            .into_par_iter()
            .map(|n| {
                let a = &self.coeffs[n];
                if a.re.is_zero() && a.im.is_zero() {
                    return (Complex::zero(p), Complex::zero(p));
                }
                let x = Float::with_val(p, &step * n as u32);
                let g1 = upper_gamma(&s1, &Float::with_val(p, &x * c), p);
                let g2 = upper_gamma(&s2, &Float::with_val(p, &x / c), p);
                let w1 = Float::with_val(p, x.clone().pow(-Float::with_val(p, s))) * g1;
                let w2 = Float::with_val(p, x.pow(&sm1)) * g2;
                (a.scale(&w1), a.conj().scale(&w2))
            })
            .collect();
        // Sequential reduction in index order keeps results independent of
        // the thread partition.
        let mut t1 = Complex::zero(p);
        let mut t2 = Complex::zero(p);
        for (u, v) in &terms {
            t1 = &t1 + u;
            t2 = &t2 + v;
        }
        (t1, t2)
    }

    fn polar_term(&self, s: &Float, c: &Float) -> Complex {
        let p = self.prec;
        match &self.polar {
            None => Complex::zero(p),
            Some(r) => {
                let sm1 = Float::with_val(p, s - 1u32);
                let a = Float::with_val(p, c.clone().pow(&sm1)) / &sm1;
                let b = Float::with_val(p, c.clone().pow(s)) / s;
                Complex::real(Float::with_val(p, r * Float::with_val(p, a - b)))
            }
        }
    }

    /// Λ(s) with split parameter c and a given root number.
    fn lambda_with(&self, s: &Float, c: &Float, w: &Complex) -> Complex {
        let (t1, t2) = self.partial_sums(s, c);
        let main = &t1 + &(w * &t2);
        &main + &self.polar_term(s, c)
    }

    /// The dual series (conjugate coefficients, root number W̄).
    pub fn dual(&self) -> LSeries {
        let mut d = self.clone();
        d.coeffs = self.coeffs.iter().map(|a| a.conj()).collect();
        d.root_number = self.root_number.conj();
        d
    }

    /// W from Λ computed at two split points.
    pub fn solve_root_number(&self) -> Complex {
        let p = self.prec;
        let s = Float::with_val(p, SOLVE_POINT);
        let c1 = Float::with_val(p, 1);
        let c2 = Float::with_val(p, SPLIT_SOLVE);
        let (a1, b1) = self.partial_sums(&s, &c1);
        let (a2, b2) = self.partial_sums(&s, &c2);
        let pol = &self.polar_term(&s, &c1) - &self.polar_term(&s, &c2);
        let num = &(&a1 - &a2) + &pol;
        let den = &b2 - &b1;
        num.div(&den)
    }

    /// Analytically continued L(s) at real s, with the functional-equation
    /// residual |Λ(s) − W·Λ̄(1 − s)| computed at a different split point.
    pub fn eval(&self, s: f64) -> LValue {
        let p = self.prec;
        let s = Float::with_val(p, s);
        let one = Float::with_val(p, 1);
        let lambda = self.lambda_with(&s, &one, &self.root_number);
        let dual = self.dual();
        let cres = Float::with_val(p, SPLIT_RESIDUAL);
        let s_dual = Float::with_val(p, 1u32 - &s);
        let dual_lambda = dual.lambda_with(&s_dual, &cres, &dual.root_number);
        let residual = lambda.dist(&(&self.root_number * &dual_lambda));
        // L(s) = Λ(s) / ((√A/2π)^s Γ(s + κ)).
        let factor = Float::with_val(p, self.x_step().pow(-Float::with_val(p, &s))) * Float::with_val(p, &s + &self.kappa()).gamma();
        let value = lambda.scale(&Float::with_val(p, 1u32 / factor));
        LValue { s, lambda, value, residual }
    }
}

/// W = i^{|a−b|}·χ̃((√d))^{-1} for characters unramified everywhere.
pub fn root_number_formula(chi: &HeckeChar, prec: u32) -> Result<Complex, LfunError> {
    if !chi.is_unramified() {
        return Err(LfunError::RamifiedFormulaUnsupported);
    }
    let ctx = chi.ctx();
    let delta = FracIdeal::principal(&ctx.sqrt_d())?;
    let v = chi.eval_unitary(&delta)?.embed(prec);
    let (a, b) = chi.inf_type();
    let k = (a - b).unsigned_abs() % 4;
    let ik = Complex::root_of_unity(prec, k as i64, 4);
    Ok(ik.div(&v))
}

/// Root number of χ̃ by the requested method.
pub fn root_number(chi: &HeckeChar, mode: RootMode, digits: u32, max_coeffs: usize) -> Result<Complex, LfunError> {
    let prec = bits_for_digits(digits) + 32;
    match mode {
        RootMode::Formula => root_number_formula(chi, prec),
        RootMode::Numeric => Ok(LSeries::for_character(chi, digits, max_coeffs)?.solve_root_number()),
    }
}

fn is_trivial(chi: &HeckeChar) -> bool {
    chi.inf_type() == (0, 0) && chi.is_unramified() && chi.twist().iter().all(|&(_, k)| k == 0)
}
