use std::sync::Arc;

use eisbound::arith::{primes_above, primes_up_to_norm, FieldCtx, FracIdeal, QuadElem};
use eisbound::characters::{char_symmetry, frob_tame_check, phi_factor, AlgValue, CharError, CharRecord, HeckeChar};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn weight_two_unramified_d67() {
    let k = FieldCtx::new(-67).unwrap();
    let o = FracIdeal::unit(k);
    assert_eq!(HeckeChar::count(&o, (2, 0)).unwrap(), 1);
    let chi = HeckeChar::build(&o, (2, 0), 0).unwrap();
    let delta = FracIdeal::principal(&k.sqrt_d()).unwrap();
    let v = chi.eval(&delta).unwrap().as_field_elem().unwrap();
    assert_eq!(v, QuadElem::from_rational(k, rat(-1, 67)));
    assert!(chi.eval(&o).unwrap().as_field_elem().unwrap().is_one());
    let ps = primes_above(k, 17).unwrap();
    let s = &chi.eval_unitary_prime(&ps[0]).unwrap().as_field_elem().unwrap() + &chi.eval_unitary_prime(&ps[1]).unwrap().as_field_elem().unwrap();
    assert_eq!(s, QuadElem::from_rational(k, rat(-33, 17)));
}

#[test]
fn unit_obstruction() {
    let k = FieldCtx::new(-67).unwrap();
    assert_eq!(HeckeChar::build(&FracIdeal::unit(k), (1, 0), 0).unwrap_err(), CharError::NoSuchCharacter);
}

#[test]
fn torsor_count_d20() {
    let k = FieldCtx::new(-20).unwrap();
    let all = HeckeChar::build_all(&FracIdeal::unit(k), (2, 0)).unwrap();
    assert_eq!(all.len(), 2);
    // Two characters differ by the nontrivial class group character.
    let p = primes_above(k, 2).unwrap().remove(0);
    let a = all[0].eval_prime(&p).unwrap();
    let b = all[1].eval_prime(&p).unwrap();
    assert!(a.mul(&AlgValue::root_of_unity(k, 1, 2)).eq_exact(&b));
}

#[test]
fn multiplicativity_random_pairs() {
    let k = FieldCtx::new(-20).unwrap();
    let m = primes_above(k, 3).unwrap().remove(0);
    let chi = HeckeChar::build(m.ideal(), (2, 0), 1).unwrap();
    let ps: Vec<_> = primes_up_to_norm(k, 80).into_iter().filter(|p| chi.is_coprime(p.ideal())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let i = ps[rng.gen_range(0..ps.len())].ideal().clone();
        let j = ps[rng.gen_range(0..ps.len())].ideal().clone();
        let lhs = chi.eval_direct(&i.mul(&j)).unwrap();
        let rhs = chi.eval(&i).unwrap().mul(&chi.eval(&j).unwrap());
        assert!(lhs.eq_exact(&rhs));
    }
    // Unitarized values have absolute value 1.
    for p in &ps {
        let u = chi.eval_unitary_prime(p).unwrap().embed(200);
        assert!((u.abs().to_f64() - 1.0).abs() < 1e-40);
    }
}

#[test]
fn principal_rule_on_ray_modulus() {
    let k = FieldCtx::new(-67).unwrap();
    let q = primes_above(k, 17).unwrap().remove(0);
    let chi = HeckeChar::build(q.ideal(), (1, 0), 3).unwrap();
    let ring = chi.ray().unwrap().ring().clone();
    for x in -6..6 {
        for y in -6..6 {
            let a = k.elem(x, y);
            if a.is_zero() || !ring.coprime(&a) || ring.reduce_star(&a).unwrap() != ring.one() {
                continue;
            }
            let v = chi.eval(&FracIdeal::principal(&a).unwrap()).unwrap();
            assert!(v.eq_exact(&AlgValue::from_elem(a.inv().unwrap())));
        }
    }
}

#[test]
fn symmetry_reports() {
    let k = FieldCtx::new(-67).unwrap();
    let chi = HeckeChar::build(&FracIdeal::unit(k), (2, 0), 0).unwrap();
    assert!(char_symmetry(&chi).unwrap().c_equals_bar);
    let triv = HeckeChar::build(&FracIdeal::unit(k), (0, 0), 0).unwrap();
    let r = char_symmetry(&triv).unwrap();
    assert!(r.c_equals_bar && r.anticyclotomic_twistable);
    let k = FieldCtx::new(-20).unwrap();
    for chi in HeckeChar::build_all(&FracIdeal::unit(k), (2, 0)).unwrap() {
        assert!(char_symmetry(&chi).unwrap().c_equals_bar);
    }
    let m = primes_above(k, 3).unwrap().remove(0);
    // Weight-two characters mod 𝔭₃ are unramified here since (𝒪/𝔭₃)* = {±1};
    // an odd infinity type sees the modulus.
    let any_false = HeckeChar::build_all(m.ideal(), (1, 0)).unwrap().iter().any(|c| !char_symmetry(c).unwrap().c_equals_bar);
    assert!(any_false);
}

#[test]
fn phi_factorization_d67() {
    let k = FieldCtx::new(-67).unwrap();
    let chi = Arc::new(HeckeChar::build(&FracIdeal::unit(k), (2, 0), 0).unwrap());
    let q = primes_above(k, 17).unwrap().remove(0);
    let (phi1, phi2) = phi_factor(&chi, &q, 19).unwrap();
    assert_eq!(phi1.inf_type(), (1, 0));
    assert_eq!(phi2.inf_type(), (-1, 0));
    let two = primes_above(k, 2).unwrap().remove(0);
    let r = phi1.eval_prime(&two).unwrap().div(&phi2.eval_prime(&two).unwrap()).unwrap();
    assert_eq!(r.as_field_elem().unwrap(), QuadElem::from_rational(k, rat(1, 4)));
    // A split prime q ≡ 1 mod 19 is rejected.
    let bad = (2..2000u64).find(|&l| eisbound::arith::is_prime(l) && l % 19 == 1 && eisbound::arith::kronecker(-67, l) == 1).unwrap();
    let qb = primes_above(k, bad).unwrap().remove(0);
    assert!(matches!(phi_factor(&chi, &qb, 19), Err(CharError::BadAuxPrime(_))));
    // The different is a valid self-conjugate auxiliary prime.
    let d = primes_above(k, 67).unwrap().remove(0);
    assert!(phi_factor(&chi, &d, 19).is_ok());
}

#[test]
fn frobenius_checks() {
    let k = FieldCtx::new(-67).unwrap();
    let chi = HeckeChar::build(&FracIdeal::unit(k), (2, 0), 0).unwrap();
    let two = primes_above(k, 2).unwrap().remove(0);
    assert!(frob_tame_check(&chi, 19, &two).unwrap());
    let d = primes_above(k, 67).unwrap().remove(0);
    assert!(frob_tame_check(&chi, 19, &d).unwrap());
    // An inert 19 has norm 361 ≡ 1 mod 5.
    let dd = [-8i64, -20, -24, -40, -43, -52].into_iter().find(|&d| eisbound::arith::kronecker(d, 19) == -1).unwrap();
    let k2 = FieldCtx::new(dd).unwrap();
    let chi2 = HeckeChar::build(&FracIdeal::unit(k2), (2, 0), 0).unwrap();
    let v = primes_above(k2, 19).unwrap().remove(0);
    assert!(!frob_tame_check(&chi2, 5, &v).unwrap());
}

#[test]
fn record_roundtrip() {
    let k = FieldCtx::new(-67).unwrap();
    let q = primes_above(k, 17).unwrap().remove(0);
    let chi = HeckeChar::build(q.ideal(), (1, 0), 5).unwrap();
    let rec = CharRecord::of(&chi).unwrap();
    let back = CharRecord::from_json(&rec.to_json()).unwrap().build().unwrap();
    assert_eq!(CharRecord::of(&back).unwrap(), rec);
    let p = primes_above(k, 23).unwrap().remove(0);
    assert!(chi.eval_prime(&p).unwrap().eq_exact(&back.eval_prime(&p).unwrap()));
    assert!(CharRecord::from_json("{\"discriminant\": 5}").is_err());
}
