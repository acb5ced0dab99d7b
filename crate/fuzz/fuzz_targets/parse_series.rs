#![no_main]

use libfuzzer_sys::fuzz_target;
use modcurve::QSeries;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Exponents size the result; numbers above four digits only exhaust memory.
    if text
        .split(|c: char| !c.is_ascii_digit())
        .any(|run| run.len() > 4)
    {
        return;
    }
    if let Ok(s) = QSeries::parse(text, Some(16)) {
        assert_eq!(QSeries::parse(&s.to_string(), None).unwrap(), s);
    }
});
