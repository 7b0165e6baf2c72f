#![no_main]

use std::str::FromStr;

use eisbound::lfun::{minimal_c4_c6, Curve};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(curve) = Curve::from_str(text) else { return };
    // Printing and reparsing is lossless.
    let again = Curve::from_str(&curve.to_string()).expect("display output parses");
    assert_eq!(again.c4_c6(), curve.c4_c6());
    if curve.discriminant() != 0.into() && text.len() < 64 {
        let _ = minimal_c4_c6(&curve);
    }
});
