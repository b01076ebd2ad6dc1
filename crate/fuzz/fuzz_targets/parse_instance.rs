#![no_main]

use caf_core::model::{parse_instance, serialize_instance};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(inst) = parse_instance(text) {
        // canonical text must parse back to the same framework
        let again = parse_instance(&serialize_instance(&inst.caf, &inst.targets)).unwrap();
        assert_eq!(again.caf, inst.caf);
        assert_eq!(again.targets, inst.targets);
    }
});
