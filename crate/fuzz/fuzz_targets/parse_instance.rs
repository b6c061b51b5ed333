#![no_main]

use kunneth_core::io::{instance_to_json, parse_instance};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(inst) = parse_instance(text) {
        // accepted input re-serializes to a fixed point
        let once = instance_to_json(&inst).expect("accepted instance serializes");
        let again = parse_instance(&once).expect("canonical output parses");
        assert_eq!(instance_to_json(&again).unwrap(), once);
    }
});
