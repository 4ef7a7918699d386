#![no_main]
//! Residue matrix files against a fixed arrangement: no panics, and a
//! successful parse round-trips through the renderer.

use libfuzzer_sys::fuzz_target;
use stabhyp::cyclo::CycField;
use stabhyp::geom::Hyperplane;
use stabhyp::poset::Arrangement;
use stabhyp::text::{parse_residues, render_residues};

fuzz_target!(|data: &[u8]| {
    let field = CycField::new(4);
    let hyperplanes = vec![
        Hyperplane::new(
            &field,
            vec![field.one(), field.from_i64(-1)],
            field.zero(),
        )
        .unwrap(),
        Hyperplane::new(&field, vec![field.one(), field.zero()], field.zero()).unwrap(),
    ];
    let arr = Arrangement::new(field.clone(), 2, hyperplanes);
    if let Ok(input) = std::str::from_utf8(data) {
        if let Ok(conn) = parse_residues(input, &arr) {
            let rendered = render_residues(&conn);
            let again = parse_residues(&rendered, &arr).expect("canonical form reparses");
            assert_eq!(again, conn);
        }
    }
});
