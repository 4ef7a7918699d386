#![no_main]
//! Scalar literal parser: must never panic, and every accepted literal must
//! round-trip through the canonical renderer.

use libfuzzer_sys::fuzz_target;
use stabhyp::cyclo::CycField;
use stabhyp::text::parse_scalar;

fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    // first byte picks the ambient field so reductions differ
    let modulus = [1u64, 2, 3, 4, 6, 12][(data[0] % 6) as usize];
    let field = CycField::new(modulus);
    if let Ok(input) = std::str::from_utf8(&data[1..]) {
        if let Ok(value) = parse_scalar(input, &field) {
            let rendered = field.render(&value);
            let again = parse_scalar(&rendered, &field).expect("canonical form reparses");
            assert_eq!(again, value, "round trip through {rendered}");
        }
    }
});
