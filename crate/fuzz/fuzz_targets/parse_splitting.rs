#![no_main]

use std::sync::OnceLock;

use kunneth_core::fixtures::dp_truncation;
use kunneth_core::io::{parse_splitting, parse_splitting_record, splitting_to_json};
use kunneth_core::kunneth::KunnethInstance;
use libfuzzer_sys::fuzz_target;

fn instance() -> &'static KunnethInstance {
    static INST: OnceLock<KunnethInstance> = OnceLock::new();
    INST.get_or_init(|| dp_truncation(2, 2, 1).expect("valid parameters"))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_splitting_record(text);
    if let Ok(fam) = parse_splitting(text, instance()) {
        let once = splitting_to_json(instance(), &fam).expect("accepted splitting serializes");
        let again = parse_splitting(&once, instance()).expect("canonical output parses");
        assert_eq!(again, fam);
    }
});
