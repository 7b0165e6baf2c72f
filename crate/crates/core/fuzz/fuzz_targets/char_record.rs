#![no_main]

use eisbound::characters::CharRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(record) = CharRecord::from_json(text) else { return };
    // Keep class group sizes small enough for a fuzzing iteration.
    if record.discriminant.unsigned_abs() > 10_000 || record.modulus.iter().any(|x| x.unsigned_abs() > 1_000) {
        return;
    }
    if let Ok(chi) = record.build() {
        assert_eq!(CharRecord::of(&chi).expect("built characters serialize"), record);
    }
});
