#![no_main]

use caf_core::encoding::parse_dimacs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_dimacs(text) {
        assert!(d.clauses.iter().flatten().all(|l| *l != 0 && l.unsigned_abs() <= d.num_vars));
    }
});
