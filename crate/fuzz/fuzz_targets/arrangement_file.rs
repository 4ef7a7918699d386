#![no_main]
//! Whole arrangement files: parsing must never panic, and a parsed
//! arrangement must survive render -> parse unchanged.

use libfuzzer_sys::fuzz_target;
use stabhyp::text::{parse_arrangement, render_arrangement};

fuzz_target!(|data: &[u8]| {
    if let Ok(input) = std::str::from_utf8(data) {
        if let Ok((arr, _warnings)) = parse_arrangement(input) {
            let rendered = render_arrangement(&arr);
            let (again, warnings) =
                parse_arrangement(&rendered).expect("canonical form reparses");
            assert!(warnings.is_empty(), "canonical output has no duplicates");
            assert!(again.same_set(&arr), "round trip changed the arrangement");
        }
    }
});
