#![no_main]

use libfuzzer_sys::fuzz_target;
use modcurve::ingest::{parse_signature, signature_to_text};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(sig) = parse_signature(text) {
        assert_eq!(parse_signature(&signature_to_text(&sig)).unwrap(), sig);
    }
});
