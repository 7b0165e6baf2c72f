#![no_main]

use eisbound::arith::{FieldCtx, FracIdeal};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|input: (i16, [i32; 4])| {
    let (d, [den, a, b, c]) = input;
    let Ok(ctx) = FieldCtx::new(i64::from(d)) else { return };
    let Ok(i) = FracIdeal::from_hnf(ctx, den.into(), a.into(), b.into(), c.into()) else { return };
    let [u, v] = i.basis();
    assert_eq!(FracIdeal::from_gens(ctx, &[u, v]).unwrap(), i);
    assert!(i.mul(&i.inv()).is_unit_ideal());
});
