use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eisbound::arith::{is_fundamental_discriminant, primes_up_to_norm, FieldCtx, FracIdeal, QuadElem};
use eisbound::classgrp::ClassGroup;
use eisbound::cusps::{cusp_equiv, cusp_reps, involution_image, involution_pairs, j_map, stabilizer_element, CuspError, MaxArithGroup};

fn fundamental(limit: i64) -> impl Iterator<Item = i64> {
    (3..limit).map(|n| -n).filter(|&d| is_fundamental_discriminant(d))
}

/// z₁𝔟 + z₂𝒪 from generators, independent of the library's cusp code.
fn cusp_lattice(z1: &QuadElem, z2: &QuadElem, b: &FracIdeal) -> FracIdeal {
    let [b0, b1] = b.basis();
    let gens: Vec<QuadElem> = [z1 * &b0, z1 * &b1, z2.clone(), z2 * &b.ctx().omega()].into_iter().filter(|z| !z.is_zero()).collect();
    FracIdeal::from_gens(b.ctx(), &gens).unwrap()
}

#[test]
fn cusp_bijection_below_300() {
    let start = std::time::Instant::now();
    for d in fundamental(300) {
        let ctx = FieldCtx::new(d).unwrap();
        let cl = ClassGroup::new(ctx);
        let h = cl.h();
        for bc in 0..h {
            let b = cl.representative(bc);
            let reps = cusp_reps(&b, &cl).unwrap();
            assert_eq!(reps.len(), h, "d={d}");
            let mut classes: Vec<usize> = reps.iter().map(|c| cl.class_of(&cusp_lattice(&c.z1, &c.z2, &b))).collect();
            for (c, &k) in reps.iter().zip(&classes) {
                assert_eq!(j_map(&c.z1, &c.z2, &b, &cl).unwrap(), k);
            }
            classes.sort_unstable();
            classes.dedup();
            assert_eq!(classes.len(), h, "j is not surjective for d={d}, b class {bc}");
        }
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn distinct_classes_are_inequivalent() {
    for d in fundamental(120) {
        let ctx = FieldCtx::new(d).unwrap();
        let cl = ClassGroup::new(ctx);
        let b = cl.representative(cl.h() - 1);
        let reps = cusp_reps(&b, &cl).unwrap();
        for (i, u) in reps.iter().enumerate() {
            for (j, v) in reps.iter().enumerate() {
                let eq = cusp_equiv((&u.z1, &u.z2), (&v.z1, &v.z2), &b).unwrap();
                assert_eq!(eq.is_some(), i == j, "d={d} {i} {j}");
                if let Some(s) = eq {
                    assert!(MaxArithGroup::new(&b).contains(&s));
                }
            }
        }
    }
}

#[test]
fn pairing_is_a_fixpoint_free_involution_for_nonsquare_classes() {
    let mut nonsquare_checked = 0;
    for d in fundamental(300) {
        let ctx = FieldCtx::new(d).unwrap();
        let cl = ClassGroup::new(ctx);
        let h = cl.h();
        for bc in 0..h {
            let b = cl.representative(bc);
            let square = cl.is_square(bc);
            let pairs = match involution_pairs(&b, &cl) {
                Ok(p) => {
                    assert!(!square);
                    p
                }
                Err(CuspError::SquareClass { pairs }) => {
                    assert!(square);
                    pairs
                }
                Err(e) => panic!("{e}"),
            };
            let partner = |i: usize| pairs.iter().find(|(a, _)| *a == i).map(|(_, b)| *b).unwrap();
            for i in 0..h {
                assert_eq!(partner(partner(i)), i);
                // Class arithmetic: [𝔞] ↦ [𝔞̄𝔟] = [𝔞]⁻¹[𝔟].
                assert_eq!(partner(i), cl.mul(cl.inv(i), bc));
            }
            if !square {
                nonsquare_checked += 1;
                assert!((0..h).all(|i| partner(i) != i), "fixed point for d={d}, b class {bc}");
            }
            // The involution image of each representative lies in the partner class.
            for c in cusp_reps(&b, &cl).unwrap() {
                let (w1, w2) = involution_image(&c.z1, &c.z2, &b);
                assert_eq!(cl.class_of(&cusp_lattice(&w1, &w2, &b)), partner(c.class_index));
            }
        }
    }
    assert!(nonsquare_checked > 100);
}

fn random_in(l: &FracIdeal, rng: &mut ChaCha8Rng) -> QuadElem {
    let [b0, b1] = l.basis();
    let x = QuadElem::from_int(l.ctx(), rng.gen_range(-5..=5));
    let y = QuadElem::from_int(l.ctx(), rng.gen_range(-5..=5));
    &(&x * &b0) + &(&y * &b1)
}

#[test]
fn stabilizer_lattices_are_sharp() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for d in [-20i64, -56, -84, -67] {
        let ctx = FieldCtx::new(d).unwrap();
        let cl = ClassGroup::new(ctx);
        for bc in 0..cl.h() {
            let b = cl.representative(bc);
            let group = MaxArithGroup::new(&b);
            let larger_by = primes_up_to_norm(ctx, 5).remove(0);
            for c in cusp_reps(&b, &cl).unwrap() {
                for _ in 0..20 {
                    let t = random_in(&c.stabilizer, &mut rng);
                    let m = stabilizer_element(&c, &b, &t).unwrap();
                    assert!(group.contains(&m));
                    // (z₁, z₂)·m is proportional to (z₁, z₂).
                    let u1 = &(&c.z1 * &m.a) + &(&c.z2 * &m.c);
                    let u2 = &(&c.z1 * &m.b) + &(&c.z2 * &m.d);
                    assert!((&(&u1 * &c.z2) - &(&u2 * &c.z1)).is_zero());
                }
                let bigger = c.stabilizer.div(larger_by.ideal());
                let failures = (0..20).filter(|_| !group.contains(&stabilizer_element(&c, &b, &random_in(&bigger, &mut rng)).unwrap())).count();
                assert!(failures > 0, "d={d}: a strictly larger lattice stayed inside H(b)");
            }
        }
    }
}
