#![no_main]

use caf_core::encoding::parse_qdimacs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_qdimacs(text) {
        assert!(d.prefix.iter().flat_map(|(_, vs)| vs).all(|&v| v >= 1 && v <= d.num_vars));
    }
});
