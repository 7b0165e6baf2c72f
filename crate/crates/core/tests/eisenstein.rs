use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eisbound::arith::{factor_ideal, ideal_val, primes_above, primes_up_to_norm, FieldCtx, FracIdeal, Mat2, PrimeIdeal, QuadElem};
use eisbound::characters::{phi_factor, AlgValue, HeckeChar};
use eisbound::eisenstein::*;

struct Setup {
    k: FieldCtx,
    chi: Arc<HeckeChar>,
    q: PrimeIdeal,
    ctx: PsiContext,
}

fn setup(d: i64, q_ell: u64, p: u64) -> Setup {
    let k = FieldCtx::new(d).unwrap();
    let chi = Arc::new(HeckeChar::build(&FracIdeal::unit(k), (2, 0), 0).unwrap());
    let q = primes_above(k, q_ell).unwrap().remove(0);
    let (phi1, phi2) = phi_factor(&chi, &q, p).unwrap();
    let ctx = PsiContext::new(phi1, phi2).unwrap();
    Setup { k, chi, q, ctx }
}

fn rand_elem(k: FieldCtx, rng: &mut ChaCha8Rng, nonzero: bool) -> QuadElem {
    loop {
        let z = k.elem(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        if nonzero && z.is_zero() {
            continue;
        }
        return z.checked_div(&k.elem(rng.gen_range(1..=30), 0)).unwrap();
    }
}

fn rand_matrix(k: FieldCtx, rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let lower_zero = rng.gen_bool(0.3);
        let c = if lower_zero { k.zero() } else { rand_elem(k, rng, true) };
        let m = Mat2::new(rand_elem(k, rng, false), rand_elem(k, rng, false), c, rand_elem(k, rng, false));
        if !m.det().is_zero() {
            return m;
        }
    }
}

#[test]
fn bruhat_examples_and_recomposition() {
    let k = FieldCtx::new(-20).unwrap();
    let g = Mat2::new(k.elem(2, 1), k.elem(3, 0), k.zero(), k.elem(1, -1));
    match bruhat_decompose(&g).unwrap() {
        Bruhat::Upper { u, t } => {
            assert_eq!(u, Mat2::upper(&k.elem(3, 0).checked_div(&k.elem(1, -1)).unwrap()));
            assert_eq!(t, Mat2::diag(&k.elem(2, 1), &k.elem(1, -1)));
        }
        other => panic!("expected the c = 0 cell, got {other:?}"),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let g = rand_matrix(k, &mut rng);
        let dec = bruhat_decompose(&g).unwrap();
        assert_eq!(dec.recompose(), g);
        if let Bruhat::Big { t, w, .. } = &dec {
            assert_eq!(t, &Mat2::diag(&(-g.det().checked_div(&g.c).unwrap()), &(-&g.c)));
            assert_eq!(w, &Mat2::weyl(k));
        }
    }
    let z = Mat2::new(k.elem(1, 0), k.elem(2, 0), k.elem(2, 0), k.elem(4, 0));
    assert_eq!(bruhat_decompose(&z), Err(EisError::Singular));
}

#[test]
fn iwasawa_recomposition_and_valuations() {
    let k = FieldCtx::new(-20).unwrap();
    let places: Vec<PrimeIdeal> = primes_up_to_norm(k, 30).into_iter().take(6).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let g = rand_matrix(k, &mut rng);
        for v in &places {
            let LocalIwasawa { b, k: kv } = iwasawa_local(&g, v).unwrap();
            assert_eq!(b.mul(&kv), g);
            assert!(b.c.is_zero());
            assert!(kv.det().is_one());
            for z in kv.entries() {
                assert!(z.is_zero() || v.val_elem(z).unwrap() >= 0);
            }
        }
    }
    // Integral with unit determinant: trivial Borel part.
    let v = primes_above(k, 3).unwrap().remove(0);
    let dec = iwasawa_local(&Mat2::from_ints(k, [[1, 0], [2, 0], [0, 0], [1, 0]]), &v).unwrap();
    assert_eq!(dec.b, Mat2::identity(k));
    let g = Mat2::new(k.elem(1, 1), k.elem(2, 0), k.elem(1, 0), k.elem(3, 0));
    let dec = iwasawa_local(&g, &v).unwrap();
    assert_eq!(dec.b, Mat2::diag(&k.one(), &g.det()));
}

#[test]
fn psi_closed_forms() {
    let s = setup(-67, 17, 19);
    let k = s.k;
    let t = DiagIdele::identity(k);
    assert!(s.ctx.eval(&Mat2::identity(k), &t, Twist::Id).unwrap().value.is_one());
    // Ψ(diag(a, d)) = d/a for the types (z, z⁻¹).
    for (a, d) in [(k.elem(3, 1), k.elem(2, -1)), (k.elem(17, 0), k.elem(1, 1)), (k.elem(5, 0).checked_div(&k.elem(34, 0)).unwrap(), k.elem(0, 1))] {
        let v = s.ctx.eval(&Mat2::diag(&a, &d), &t, Twist::Id).unwrap().value;
        assert!(v.eq_exact(&AlgValue::from_elem(d.checked_div(&a).unwrap())), "diag({a}, {d})");
    }
    // η = w₀·(1, 1/2; 0, 1): the local factor at (2) is χ_v⁻¹(1/2) = χ((2)).
    let two = primes_above(k, 2).unwrap().remove(0);
    let half = k.one().checked_div(&k.elem(2, 0)).unwrap();
    let eta = Mat2::weyl(k).mul(&Mat2::upper(&half));
    let f = s.ctx.local_factor(&eta, &two, Twist::Id).unwrap();
    assert!(f.value.eq_exact(&s.chi.eval_prime(&two).unwrap()));
    let total = s.ctx.eval(&eta, &t, Twist::Id).unwrap().value;
    assert!(total.eq_exact(&s.chi.eval_prime(&two).unwrap()));
    assert!(total.eq_exact(&AlgValue::from_elem(k.elem(1, 0).checked_div(&k.elem(4, 0)).unwrap())));
    // The conjugate side at v̄ = v.
    let g = s.ctx.local_factor(&eta.conj(), &two.conj(), Twist::W0).unwrap();
    assert!(g.value.eq_exact(&f.value));
}

/// χ of the denominator ideal of e, i.e. ∏ χ(P)^{max(0, −ord_P e)}.
fn chi_of_denominator(chi: &HeckeChar, e: &QuadElem) -> AlgValue {
    let mut v = AlgValue::one(e.ctx());
    if e.is_zero() {
        return v;
    }
    for (p, n) in factor_ideal(&FracIdeal::principal(e).unwrap()).unwrap().into_values() {
        if n < 0 {
            v = v.mul(&chi.eval_prime(&p).unwrap().pow(-n).unwrap());
        }
    }
    v
}

#[test]
fn local_global_consistency() {
    let s = setup(-67, 17, 19);
    let k = s.k;
    let t = DiagIdele::identity(k);
    let phi_f = |c: &HeckeChar, x: &QuadElem| AlgValue::from_elem(c.infinity_component(x).unwrap()).inv().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let eta = rand_matrix(k, &mut rng);
        let local = s.ctx.eval(&eta, &t, Twist::Id).unwrap().value;
        let global = match bruhat_decompose(&eta).unwrap() {
            Bruhat::Upper { t, .. } => phi_f(s.ctx.phi1(), &t.a).mul(&phi_f(s.ctx.phi2(), &t.d)),
            Bruhat::Big { t, u2, .. } => phi_f(s.ctx.phi1(), &t.a).mul(&phi_f(s.ctx.phi2(), &t.d)).mul(&chi_of_denominator(&s.chi, &u2.b)),
        };
        assert!(local.eq_exact(&global), "η = {eta}");
    }
}

#[test]
fn component_counts() {
    let k = FieldCtx::new(-67).unwrap();
    assert_eq!(component_reps(&FracIdeal::unit(k)).unwrap().len(), 1);
    let q = primes_above(k, 17).unwrap().remove(0);
    let comps = component_reps(q.ideal()).unwrap();
    assert_eq!(comps.len(), 8);
    assert!(comps.iter().all(|c| c.is_full_level()));
    let root = FracIdeal::principal(&k.sqrt_d()).unwrap();
    assert_eq!(component_reps(&root).unwrap().len(), 33);
    let k20 = FieldCtx::new(-20).unwrap();
    let q3 = primes_above(k20, 3).unwrap().remove(0);
    let comps = component_reps(q3.ideal()).unwrap();
    assert_eq!(comps.len(), 2);
    assert!(comps[0].a.is_unit_ideal());
    let p2 = FracIdeal::from_gens(k20, &[k20.elem(2, 0), k20.elem(1, 1)]).unwrap();
    assert_eq!(comps[1].a, p2);
    assert_eq!(comps[1].group.ideal(), &p2);
}

fn run_battery(d: i64, q_ell: u64, p: u64, per_cell: usize) -> ConstantTermReport {
    let s = setup(d, q_ell, p);
    let comps = component_reps(s.q.ideal()).unwrap();
    let battery = sample_battery(s.k, per_cell, 2024);
    constant_term_check(&s.ctx, &comps, &battery).unwrap()
}

#[test]
fn identity_battery_d67() {
    let rep = run_battery(-67, 17, 19, 10);
    assert_eq!(rep.components.len(), 8);
    for c in &rep.components {
        assert_eq!((c.upper.passed, c.upper.total), (10, 10));
        assert_eq!((c.big.passed, c.big.total), (10, 10));
        assert!(c.antisymmetric);
    }
    assert!(rep.all_pass);
    rep.require_all().unwrap();
}

#[test]
fn identity_battery_d20_both_group_types() {
    let rep = run_battery(-20, 3, 7, 10);
    assert_eq!(rep.components.len(), 2);
    assert!(rep.components.iter().any(|c| !c.component.a_is_trivial));
    assert!(rep.all_pass, "{:?}", rep.failures.first());
    for c in &rep.components {
        assert_eq!(c.cusps.len(), 2);
        for cusp in &c.cusps {
            assert!(cusp.antisymmetric);
        }
    }
}

#[test]
fn identity_detects_wrong_conventions() {
    for (d, ql, p) in [(-20, 3, 7), (-67, 17, 19)] {
        let s = setup(d, ql, p);
        let comps = component_reps(s.q.ideal()).unwrap();
        let battery = sample_battery(s.k, 10, 5);
        for comp in comps.iter().take(2) {
            let a_inv = if comp.is_full_level() { Mat2::identity(s.k) } else { comp.group.a_matrix().inv().unwrap() };
            let mut unconjugated = 0;
            let mut untwisted = 0;
            for (_, eta) in &battery {
                let lhs = s.ctx.eval(eta, &comp.t, Twist::Id).unwrap().value;
                let plain = s.ctx.eval(&eta.mul(&a_inv), &comp.t, Twist::W0).unwrap().value;
                let id = s.ctx.eval(&eta.conj().mul(&a_inv), &comp.t, Twist::Id).unwrap().value;
                unconjugated += usize::from(!lhs.eq_exact(&plain));
                untwisted += usize::from(!lhs.eq_exact(&id));
            }
            assert!(unconjugated > 0, "d = {d}: conjugation is invisible");
            assert!(untwisted > 0, "d = {d}: the twist is invisible");
        }
    }
}

#[test]
fn ramified_ratio_is_undefined() {
    let k = FieldCtx::new(-67).unwrap();
    let q = primes_above(k, 17).unwrap().remove(0);
    let phi1 = Arc::new(HeckeChar::build(q.ideal(), (1, 0), 0).unwrap());
    let phi2 = Arc::new(HeckeChar::build(q.ideal(), (1, 0), 1).unwrap());
    let ctx = PsiContext::new(phi1, phi2).unwrap();
    assert!(!ctx.ratio_unramified());
    let comps = component_reps(q.ideal()).unwrap();
    let battery = sample_battery(k, 2, 1);
    assert!(matches!(constant_term_check(&ctx, &comps, &battery), Err(EisError::UndefinedAtLevel(_))));
    let t = DiagIdele::identity(k);
    assert!(matches!(ctx.eval(&Mat2::identity(k), &t, Twist::Id), Err(EisError::UndefinedAtLevel(_))));
}

#[test]
fn hecke_eigenvalues_d67() {
    let s = setup(-67, 17, 19);
    let ps: Vec<PrimeIdeal> = primes_up_to_norm(s.k, 200).into_iter().filter(|v| ideal_val(s.q.ideal(), v) == 0).collect();
    let data = eis_hecke_data(s.ctx.phi1(), s.ctx.phi2(), &ps).unwrap();
    assert_eq!(data.len(), ps.len());
    for e in &data {
        assert!(e.t_within_bound, "{}", e.prime);
        assert!(e.s_central, "{}", e.prime);
        // |φ₂(P)| = Nm^{1/2} = Nm·|φ₁(P)|, so |T_v| ≤ 2·Nm^{1/2}.
        assert!(e.t_abs <= 2.0 * (e.norm as f64).sqrt() + 1e-9);
    }
    let two = &data[0];
    assert_eq!(two.prime, "(2)");
    assert_eq!(two.phi1_value, "-729/2 * (-1/6561)^(1/8)^6");
    assert_eq!(two.phi2_value, "-1458 * (-1/6561)^(1/8)^6");
    assert_eq!(two.s_eigenvalue, "-81 * (-1/6561)^(1/8)^4");
    assert!((two.t_approx.0 - 2.0 * 2f64.sqrt()).abs() < 1e-12 && (two.t_approx.1 + 2.0 * 2f64.sqrt()).abs() < 1e-12);
    // Split places: T at v and v̄ differ for this pair.
    assert!(data.iter().filter_map(|e| e.conjugate_agrees).any(|x| !x));
    assert!(matches!(eis_hecke_data(s.ctx.phi1(), s.ctx.phi2(), std::slice::from_ref(&s.q)), Err(EisError::RamifiedPrime(_))));
}

#[test]
fn report_is_thread_independent() {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = one.install(|| serde_json::to_string(&run_battery(-20, 3, 7, 4)).unwrap());
    let b = serde_json::to_string(&run_battery(-20, 3, 7, 4)).unwrap();
    assert_eq!(a, b);
}
