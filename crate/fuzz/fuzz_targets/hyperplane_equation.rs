#![no_main]
//! Hyperplane equation grammar: no panics; accepted equations re-render to
//! a canonical form that parses back to the same hyperplane.

use libfuzzer_sys::fuzz_target;
use stabhyp::cyclo::CycField;
use stabhyp::text::{parse_hyperplane, render_hyperplane};

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let modulus = [1u64, 2, 4, 12][(data[0] % 4) as usize];
    let dim = 1 + (data[1] % 5) as usize;
    let field = CycField::new(modulus);
    if let Ok(input) = std::str::from_utf8(&data[2..]) {
        if let Ok(h) = parse_hyperplane(input, &field, dim, 1) {
            let rendered = render_hyperplane(&field, &h);
            let again =
                parse_hyperplane(&rendered, &field, dim, 1).expect("canonical form reparses");
            assert_eq!(again, h);
        }
    }
});
