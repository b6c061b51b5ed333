#![no_main]

use std::sync::OnceLock;

use kunneth_core::fixtures::dp_truncation;
use kunneth_core::io::{iso_inputs, parse_iso_record};
use kunneth_core::kunneth::KunnethInstance;
use libfuzzer_sys::fuzz_target;

fn instance() -> &'static KunnethInstance {
    static INST: OnceLock<KunnethInstance> = OnceLock::new();
    INST.get_or_init(|| dp_truncation(2, 2, 1).expect("valid parameters"))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rec) = parse_iso_record(text) {
        let _ = iso_inputs(&rec, instance(), instance());
    }
});
