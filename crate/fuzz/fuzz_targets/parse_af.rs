#![no_main]

use caf_core::model::{parse_af, serialize_af};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(af) = parse_af(text) {
        assert_eq!(parse_af(&serialize_af(&af)).unwrap(), af);
    }
});
