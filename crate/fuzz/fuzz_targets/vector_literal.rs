#![no_main]
//! Comma-separated vector literals: no panics, round trip on success.

use libfuzzer_sys::fuzz_target;
use stabhyp::cyclo::CycField;
use stabhyp::text::{parse_vector, render_vector};

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let modulus = [1u64, 2, 4, 12][(data[0] % 4) as usize];
    let dim = 1 + (data[1] % 5) as usize;
    let field = CycField::new(modulus);
    if let Ok(input) = std::str::from_utf8(&data[2..]) {
        if let Ok(v) = parse_vector(input, &field, dim) {
            let rendered = render_vector(&field, &v);
            let again = parse_vector(&rendered, &field, dim).expect("canonical form reparses");
            assert_eq!(again, v);
        }
    }
});
