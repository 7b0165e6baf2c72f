//! Period-normalized special values and their p-adic valuation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::arith::factor_ideal;
use crate::characters::HeckeChar;
use crate::numeric::{pi, rational_to_float, Complex};

use super::period::{neron_period, Curve};
use super::recon::{reconstruct, val_p};
use super::series::{LSeries, RootMode};
use super::LfunError;

/// Numerical settings for special-value computations.
#[derive(Clone, Debug)]
pub struct LConfig {
    pub digits: u32,
    pub max_coeffs: usize,
    pub max_denominator: BigInt,
}

impl Default for LConfig {
    fn default() -> Self {
        LConfig { digits: 50, max_coeffs: 200_000, max_denominator: BigInt::from(1_000_000u32) }
    }
}

/// Source of the period Ω.
#[derive(Clone, Debug)]
pub enum PeriodSource {
    Curve(Curve),
    Value(Float),
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexText {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LDiagnostics {
    pub residual: String,
    pub reconstruction_error: Option<String>,
    pub truncation: usize,
    pub root_number: ComplexText,
    pub root_number_source: RootMode,
}

/// L(0, χ), Ω, L^alg and L^int with diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct LValueReport {
    pub prime: u64,
    pub inf_type: (i64, i64),
    pub digits: u32,
    #[serde(rename = "L0")]
    pub l0: ComplexText,
    pub omega: String,
    pub l_alg_float: ComplexText,
    pub l_alg_rational: Option<String>,
    pub l_int: Option<String>,
    pub val_p: Option<i64>,
    pub diagnostics: LDiagnostics,
    #[serde(skip)]
    pub l0_value: Complex,
    #[serde(skip)]
    pub l_alg_value: Complex,
    #[serde(skip)]
    pub rational: Option<BigRational>,
    #[serde(skip)]
    pub residual_value: Float,
}

pub fn float_text(x: &Float, digits: u32) -> String {
    x.to_string_radix(10, Some(digits as usize))
}

pub fn complex_text(z: &Complex, digits: u32) -> ComplexText {
    ComplexText { re: float_text(&z.re, digits), im: float_text(&z.im, digits) }
}

/// L_int = L_alg when val_p ≥ 0, and 1 otherwise.
pub fn l_int(l_alg: &BigRational, p: u64) -> BigRational {
    match val_p(l_alg, p) {
        Some(v) if v >= 0 => l_alg.clone(),
        _ => BigRational::one(),
    }
}

/// Computes L(0, χ) and its normalization Ω^{−a−2b}(2π/√|d|)^b Γ(a+b)·L(0, χ).
pub fn l_alg_report(chi: &HeckeChar, p: u64, period: &PeriodSource, cfg: &LConfig) -> Result<LValueReport, LfunError> {
    for (q, _) in factor_ideal(chi.modulus())?.values() {
        if q.ell() == p {
            return Err(LfunError::ConductorNotCoprime);
        }
    }
    let series = LSeries::for_character(chi, cfg.digits, cfg.max_coeffs)?;
    let prec = series.prec();
    let lv = series.eval(1.0);
    let omega = match period {
        PeriodSource::Curve(c) => neron_period(c, cfg.digits + 10)?,
        PeriodSource::Value(v) => v.clone(),
    };
    let omega = Float::with_val(prec, omega);
    let (a, b) = chi.inf_type();
    let d = chi.ctx().disc();
    let mut factor = Float::with_val(prec, omega.clone().pow(-(a + 2 * b) as i32));
    if b != 0 {
        let t = Float::with_val(prec, pi(prec) * 2u32) / Float::with_val(prec, -d).sqrt();
        factor *= t.pow(b as i32);
    }
    factor *= Float::with_val(prec, (a + b) as u32).gamma();
    let l_alg = lv.value.scale(&factor);
    let tol = Float::with_val(prec, 10).pow(-((cfg.digits / 2) as i32));
    let rational = if Float::with_val(prec, l_alg.im.abs_ref()) < tol { reconstruct(&l_alg.re, &cfg.max_denominator, &tol) } else { None };
    let recon_err = rational.as_ref().map(|r| {
        let e = Float::with_val(prec, &l_alg.re - rational_to_float(prec, r)).abs();
        Float::with_val(prec, e)
    });
    let vp = rational.as_ref().and_then(|r| if r.is_zero() { None } else { val_p(r, p) });
    let lint = rational.as_ref().map(|r| l_int(r, p));
    let digits = cfg.digits;
    Ok(LValueReport {
        prime: p,
        inf_type: (a, b),
        digits,
        l0: complex_text(&lv.value, digits),
        omega: float_text(&omega, digits),
        l_alg_float: complex_text(&l_alg, digits),
        l_alg_rational: rational.as_ref().map(|r| r.to_string()),
        l_int: lint.map(|r| r.to_string()),
        val_p: vp,
        diagnostics: LDiagnostics {
            residual: float_text(&lv.residual, 6),
            reconstruction_error: recon_err.map(|e| float_text(&e, 6)),
            truncation: series.truncation(),
            root_number: complex_text(series.root_number(), digits),
            root_number_source: series.root_source(),
        },
        l0_value: lv.value,
        l_alg_value: l_alg,
        rational,
        residual_value: lv.residual,
    })
}

impl LValueReport {
    /// val_p, or `ReconstructionFailed` when no rational was recognized.
    pub fn require_valuation(&self) -> Result<i64, LfunError> {
        self.val_p.ok_or(LfunError::ReconstructionFailed)
    }
}
