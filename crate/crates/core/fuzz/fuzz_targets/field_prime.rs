#![no_main]

use eisbound::arith::{factor_prime, is_prime, FieldCtx, FracIdeal};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: (i64, u16)| {
    let (d, ell) = input;
    let ell = u64::from(ell);
    if !is_prime(ell) || d.unsigned_abs() > 1_000_000 {
        return;
    }
    let Ok(ctx) = FieldCtx::new(d) else { return };
    let mut prod = FracIdeal::unit(ctx);
    for (p, e) in factor_prime(ctx, ell).expect("ell is prime") {
        prod = prod.mul(&p.ideal().pow(i64::from(e)));
    }
    assert_eq!(prod, FracIdeal::rational(ctx, &num_rational::BigRational::from_integer(ell.into())).unwrap());
});
