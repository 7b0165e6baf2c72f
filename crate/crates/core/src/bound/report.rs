//! The Selmer lower bound and the end-to-end report pipeline.

use serde::Serialize;

use crate::arith::{FieldCtx, FracIdeal};
use crate::characters::{CharRecord, HeckeChar};
use crate::lfun::{l_alg_report, Curve, LConfig, LValueReport, PeriodSource};

use super::hypotheses::{check_hypotheses, AuxSelection, Condition, HypothesisReport};
use super::BoundError;

const TAME_CONDITION: &str = "Frobenius criterion at v | M1";

/// The bound val_p #Sel(F, χ_𝔭ε) ≥ f·val_p(L^int) with its justification.
#[derive(Clone, Debug, Serialize)]
pub struct SelmerBoundReport {
    pub discriminant: i64,
    pub prime: u64,
    pub l_alg: String,
    pub l_int: String,
    pub val_p_l_int: i64,
    /// Residue degree of the coefficient ring over ℤ_p.
    pub residue_degree: u32,
    /// #𝓡/(L^int) written as a power of p.
    pub congruence_target_order: String,
    pub selmer_valuation_lower_bound: i64,
    /// The Selmer group the bound is stated for.
    pub selmer_group: String,
    pub chain: Vec<String>,
    /// Frobenius checks at the places removed from the Selmer conditions.
    pub sigma_removal: Vec<Condition>,
    pub citations: Vec<String>,
    pub conditional_on: Vec<String>,
    pub aux_conductor: String,
}

/// Assembles the bound from verified hypotheses and a special-value report.
pub fn selmer_report(hyp: &HypothesisReport, lreport: &LValueReport) -> Result<SelmerBoundReport, BoundError> {
    if !hyp.overall {
        return Err(BoundError::HypothesesFailed(hyp.failures()));
    }
    if lreport.prime != hyp.prime {
        return Err(BoundError::Mismatch("the special value was computed for a different prime"));
    }
    let val = lreport.val_p.ok_or(BoundError::NoValuation)?;
    let (l_alg, l_int) = match (&lreport.l_alg_rational, &lreport.l_int) {
        (Some(a), Some(i)) => (a.clone(), i.clone()),
        _ => return Err(BoundError::NoValuation),
    };
    let witness = hyp.aux_witness.as_ref().ok_or_else(|| BoundError::HypothesesFailed(hyp.failures()))?;
    let f = hyp.residue_degree().ok_or(BoundError::Mismatch("p is not unramified"))?;
    let p = hyp.prime;
    let val_int = val.max(0);
    let bound = i64::from(f) * val_int;
    let sigma_removal: Vec<Condition> = witness.conditions.iter().filter(|c| c.name == TAME_CONDITION).cloned().collect();
    let removable = !sigma_removal.is_empty() && sigma_removal.iter().all(|c| c.passed);
    let sigma = format!("{{{}}}", witness.conductor);
    let selmer_group = if removable { "Sel(F, χ_𝔭ε)".to_string() } else { format!("Sel^Σ(F, χ_𝔭ε) with Σ = {sigma}") };
    let mut chain = vec![
        format!("val_{p} #Sel^Σ(F, χ_𝔭ε) ≥ val_{p} #(T/I_φ), Σ = {sigma} the places of M1 outside p"),
        format!("val_{p} #(T/I_φ) ≥ val_{p} #(R/L^int(0,χ)) = {f}·{val_int} = {bound}"),
    ];
    if removable {
        chain.push(format!("Sel^Σ(F, χ_𝔭ε) = Sel(F, χ_𝔭ε): the Frobenius criterion holds at every v ∈ {sigma}"));
    }
    chain.push(format!("val_{p} #{selmer_group} ≥ {bound}"));
    let mut citations = vec![
        "Selmer lower bound from the Eisenstein congruence module".to_string(),
        "surjection of the Eisenstein quotient onto R/(L^int(0, φ1/φ2))".to_string(),
        "existence of φ1, φ2 with φ1/φ2 = χ for unramified χ of type z^2".to_string(),
    ];
    if removable {
        citations.push("unramified Selmer conditions at v with ρ(Frob_v) ≢ ε(Frob_v) mod p".to_string());
    }
    Ok(SelmerBoundReport {
        discriminant: hyp.discriminant,
        prime: p,
        l_alg,
        l_int,
        val_p_l_int: val_int,
        residue_degree: f,
        congruence_target_order: format!("{p}^{}", bound),
        selmer_valuation_lower_bound: bound,
        selmer_group,
        chain,
        sigma_removal,
        citations,
        conditional_on: hyp.conditional_on.clone(),
        aux_conductor: witness.conductor.clone(),
    })
}

/// Inputs of the full pipeline.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub discriminant: i64,
    pub prime: u64,
    /// Index among the unramified characters of type (2, 0).
    pub twist_index: usize,
    pub aux: AuxSelection,
    pub period: PeriodSource,
    pub l: LConfig,
    pub assume_conjecture: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSummary {
    pub discriminant: i64,
    pub class_number: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundSection {
    pub selmer_valuation_lower_bound: Option<i64>,
    pub conditional_on: Vec<String>,
    pub detail: Option<SelmerBoundReport>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub field: FieldSummary,
    pub prime: u64,
    pub character: CharRecord,
    pub hypotheses: HypothesisReport,
    pub l_value: LValueReport,
    pub bound: BoundSection,
}

impl PipelineReport {
    /// Whether the hypotheses hold and a bound was emitted.
    pub fn passed(&self) -> bool {
        self.hypotheses.overall && self.bound.selmer_valuation_lower_bound.is_some()
    }
}

/// Hypotheses, special value, and bound for one field, prime, and character.
pub fn run_pipeline(cfg: &PipelineConfig) -> Result<PipelineReport, BoundError> {
    let ctx = FieldCtx::new(cfg.discriminant)?;
    let chi = HeckeChar::build(&FracIdeal::unit(ctx), (2, 0), cfg.twist_index)?;
    let hypotheses = check_hypotheses(&chi, cfg.prime, &cfg.aux, cfg.assume_conjecture)?;
    let l_value = l_alg_report(&chi, cfg.prime, &cfg.period, &cfg.l)?;
    let bound = match selmer_report(&hypotheses, &l_value) {
        Ok(rep) => BoundSection {
            selmer_valuation_lower_bound: Some(rep.selmer_valuation_lower_bound),
            conditional_on: rep.conditional_on.clone(),
            detail: Some(rep),
            error: None,
        },
        Err(e) => {
            BoundSection { selmer_valuation_lower_bound: None, conditional_on: hypotheses.conditional_on.clone(), detail: None, error: Some(e.to_string()) }
        }
    };
    Ok(PipelineReport {
        field: FieldSummary { discriminant: cfg.discriminant, class_number: hypotheses.class_number },
        prime: cfg.prime,
        character: CharRecord::of(&chi)?,
        hypotheses,
        l_value,
        bound,
    })
}

/// F = ℚ(√−67), p = 19, the CM curve of conductor 67² with j = j(𝒪_F).
pub fn example67_config(l: LConfig) -> PipelineConfig {
    PipelineConfig {
        discriminant: -67,
        prime: 19,
        twist_index: 0,
        aux: AuxSelection::Auto,
        period: PeriodSource::Curve(Curve::new([0, 0, 1, -7370, 243528])),
        l,
        assume_conjecture: false,
    }
}

pub fn example67(l: LConfig) -> Result<PipelineReport, BoundError> {
    run_pipeline(&example67_config(l))
}
