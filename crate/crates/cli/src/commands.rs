//! One function per subcommand; each returns a JSON value and whether its
//! internal verifications passed.

use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use eisbound::arith::{ideal_val, primes_up_to_norm, FracIdeal};
use eisbound::bound::{check_hypotheses, example67, run_pipeline, AuxSelection, PipelineConfig};
use eisbound::characters::{char_symmetry, phi_factor, unit_condition, CharRecord, HeckeChar};
use eisbound::classgrp::{reduced_forms, ClassGroup, RayClassGroup};
use eisbound::cusps::{cusp_reps, involution_pairs, CuspError};
use eisbound::eisenstein::{component_reps, constant_term_check, eis_hecke_data, sample_battery, PsiContext};
use eisbound::lfun::{l_alg_report, Curve, PeriodSource};

use crate::config::{parse_inf_type, RunConfig};
use crate::error::CliError;

pub struct Outcome {
    pub value: Value,
    pub verified: bool,
}

fn outcome<T: Serialize>(v: &T, verified: bool) -> Result<Outcome, CliError> {
    let mut value = serde_json::to_value(v).expect("reports serialize");
    if let Value::Object(map) = &mut value {
        map.insert("verified".into(), Value::Bool(verified));
    }
    Ok(Outcome { value, verified })
}

#[derive(Serialize)]
struct ClassGroupOut {
    discriminant: i64,
    class_number: usize,
    structure: Vec<u64>,
    forms: Vec<[i64; 3]>,
    enumerated_forms: usize,
}

pub fn classgroup(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ctx = cfg.field()?;
    let cl = ClassGroup::new(ctx);
    let h = cl.h();
    let out = ClassGroupOut {
        discriminant: ctx.disc(),
        class_number: h,
        structure: cl.structure().to_vec(),
        forms: cl.forms().iter().map(|f| [f.a, f.b, f.c]).collect(),
        enumerated_forms: reduced_forms(ctx.disc()).len(),
    };
    let verified = out.enumerated_forms == h && out.structure.iter().product::<u64>() == h as u64;
    outcome(&out, verified)
}

#[derive(Serialize)]
struct CuspOut {
    class_index: usize,
    z1: String,
    z2: String,
    ideal: String,
    stabilizer: String,
    partner: Option<usize>,
}

#[derive(Serialize)]
struct CuspClassOut {
    b_class: usize,
    b: String,
    square_class: bool,
    cusps: Vec<CuspOut>,
    pairs: Vec<(usize, usize)>,
    count_matches: bool,
    j_bijective: bool,
    fixpoint_free: Option<bool>,
}

pub fn cusps(cfg: &RunConfig, class: Option<usize>) -> Result<Outcome, CliError> {
    let ctx = cfg.field()?;
    let cl = ClassGroup::new(ctx);
    let h = cl.h();
    let classes: Vec<usize> = match class {
        Some(c) if c < h => vec![c],
        Some(c) => return Err(CliError::Config(format!("class index {c} out of range (h = {h})"))),
        None => (0..h).collect(),
    };
    let mut out = Vec::new();
    for c in classes {
        let b = cl.representative(c);
        let reps = cusp_reps(&b, &cl)?;
        let (pairs, square) = match involution_pairs(&b, &cl) {
            Ok(p) => (p, false),
            Err(CuspError::SquareClass { pairs }) => (pairs, true),
            Err(e) => return Err(e.into()),
        };
        let mut seen: Vec<usize> = reps.iter().map(|r| r.class_index).collect();
        seen.sort_unstable();
        seen.dedup();
        out.push(CuspClassOut {
            b_class: c,
            b: b.to_string(),
            square_class: square,
            cusps: reps
                .iter()
                .map(|r| CuspOut {
                    class_index: r.class_index,
                    z1: r.z1.to_string(),
                    z2: r.z2.to_string(),
                    ideal: r.ideal.to_string(),
                    stabilizer: r.stabilizer.to_string(),
                    partner: r.partner,
                })
                .collect(),
            fixpoint_free: (!square).then(|| pairs.iter().all(|(i, j)| i != j)),
            pairs,
            count_matches: reps.len() == h,
            j_bijective: seen.len() == h,
        });
    }
    let verified = out.iter().all(|c| c.count_matches && c.j_bijective && c.fixpoint_free != Some(false));
    #[derive(Serialize)]
    struct Out {
        discriminant: i64,
        class_number: usize,
        classes: Vec<CuspClassOut>,
    }
    outcome(&Out { discriminant: ctx.disc(), class_number: h, classes: out }, verified)
}

#[derive(Serialize)]
struct CharOut {
    index: usize,
    record: CharRecord,
    values: Vec<(String, String)>,
    c_equals_bar: bool,
    round_trip: bool,
}

pub fn chars(cfg: &RunConfig, inf_type: &str) -> Result<Outcome, CliError> {
    let ctx = cfg.field()?;
    let inf = parse_inf_type(inf_type)?;
    let modulus = cfg.aux.as_ref().map(|q| q.ideal().clone()).unwrap_or_else(|| FracIdeal::unit(ctx));
    let ray = RayClassGroup::new(&modulus)?;
    let exists = unit_condition(&ray, inf);
    let chars = if exists { HeckeChar::build_all(&modulus, inf)? } else { Vec::new() };
    let test_primes: Vec<_> = primes_up_to_norm(ctx, 200).into_iter().filter(|v| ideal_val(&modulus, v) == 0).take(6).collect();
    let mut out = Vec::new();
    for (index, chi) in chars.iter().enumerate() {
        let record = CharRecord::of(chi)?;
        let rebuilt = record.build()?;
        let mut values = Vec::new();
        let mut round_trip = true;
        for v in &test_primes {
            let a = chi.eval_prime(v)?;
            round_trip &= a.eq_exact(&rebuilt.eval_prime(v)?);
            values.push((v.to_string(), a.to_string()));
        }
        let sym = char_symmetry(chi)?;
        out.push(CharOut { index, record, values, c_equals_bar: sym.c_equals_bar, round_trip });
    }
    let expected = if exists { ray.order() } else { 0 };
    let verified = out.len() == expected && out.iter().all(|c| c.round_trip);
    #[derive(Serialize)]
    struct Out {
        discriminant: i64,
        modulus: String,
        inf_type: (i64, i64),
        exists: bool,
        ray_class_order: usize,
        characters: Vec<CharOut>,
    }
    outcome(&Out { discriminant: ctx.disc(), modulus: modulus.to_string(), inf_type: inf, exists, ray_class_order: ray.order(), characters: out }, verified)
}

/// The curve from the command line, or the CM curve of conductor 67² for d = −67.
fn period(cfg: &RunConfig, d: i64) -> Result<PeriodSource, CliError> {
    match (&cfg.curve, d) {
        (Some(c), _) => Ok(PeriodSource::Curve(c.clone())),
        (None, -67) => Ok(PeriodSource::Curve(Curve::new([0, 0, 1, -7370, 243528]))),
        (None, _) => Err(CliError::Config("--curve is required for the period unless d = -67".into())),
    }
}

fn weight_two(cfg: &RunConfig) -> Result<Arc<HeckeChar>, CliError> {
    let ctx = cfg.field()?;
    Ok(Arc::new(HeckeChar::build(&FracIdeal::unit(ctx), (2, 0), cfg.twist)?))
}

/// Largest FE residual accepted as verified: 10^{-(digits - 10)}.
fn residual_ok(residual: f64, digits: u32) -> bool {
    residual.abs() < 10f64.powi(-(digits as i32 - 10))
}

pub fn lvalue(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let chi = weight_two(cfg)?;
    let p = cfg.p()?;
    let rep = l_alg_report(&chi, p, &period(cfg, chi.ctx().disc())?, &cfg.l)?;
    let verified = rep.val_p.is_some() && residual_ok(rep.residual_value.to_f64(), cfg.l.digits);
    outcome(&rep, verified)
}

pub fn eis(cfg: &RunConfig, samples: usize, seed: u64, hecke_norm: u64) -> Result<Outcome, CliError> {
    let chi = weight_two(cfg)?;
    let ctx = chi.ctx();
    let p = cfg.p()?;
    let q = match &cfg.aux {
        Some(q) => q.clone(),
        None => check_hypotheses(&chi, p, &AuxSelection::Auto, false)?
            .aux_witness
            .map(|w| w.prime)
            .ok_or_else(|| CliError::Config("no auxiliary prime found; pass --aux-prime".into()))?,
    };
    let (phi1, phi2) = phi_factor(&chi, &q, p)?;
    let psi = PsiContext::new(phi1.clone(), phi2.clone())?;
    let comps = component_reps(q.ideal())?;
    let battery = sample_battery(ctx, samples, seed);
    let constant_term = constant_term_check(&psi, &comps, &battery)?;
    let primes: Vec<_> = primes_up_to_norm(ctx, hecke_norm).into_iter().filter(|v| ideal_val(q.ideal(), v) == 0).collect();
    let hecke = eis_hecke_data(&phi1, &phi2, &primes)?;
    let verified = constant_term.all_pass && hecke.iter().all(|e| e.t_within_bound && e.s_central);
    #[derive(Serialize)]
    struct Out {
        discriminant: i64,
        prime: u64,
        aux_prime: String,
        phi1: CharRecord,
        phi2_modulus: String,
        phi2_inf_type: (i64, i64),
        samples_per_cell: usize,
        seed: u64,
        constant_term: eisbound::eisenstein::ConstantTermReport,
        hecke: Vec<eisbound::eisenstein::HeckeEntry>,
    }
    let out = Out {
        discriminant: ctx.disc(),
        prime: p,
        aux_prime: q.to_string(),
        phi1: CharRecord::of(&phi1)?,
        phi2_modulus: phi2.modulus().to_string(),
        phi2_inf_type: phi2.inf_type(),
        samples_per_cell: samples,
        seed,
        constant_term,
        hecke,
    };
    outcome(&out, verified)
}

fn aux_selection(cfg: &RunConfig) -> AuxSelection {
    cfg.aux.clone().map(AuxSelection::Prime).unwrap_or(AuxSelection::Auto)
}

pub fn check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let chi = weight_two(cfg)?;
    let rep = check_hypotheses(&chi, cfg.p()?, &aux_selection(cfg), cfg.assume_conjecture)?;
    let verified = rep.overall;
    outcome(&rep, verified)
}

pub fn bound(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ctx = cfg.field()?;
    let pc = PipelineConfig {
        discriminant: ctx.disc(),
        prime: cfg.p()?,
        twist_index: cfg.twist,
        aux: aux_selection(cfg),
        period: period(cfg, ctx.disc())?,
        l: cfg.l.clone(),
        assume_conjecture: cfg.assume_conjecture,
    };
    let rep = run_pipeline(&pc)?;
    let verified = rep.passed();
    outcome(&rep, verified)
}

pub fn example(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rep = example67(cfg.l.clone())?;
    let verified = rep.passed();
    outcome(&rep, verified)
}
