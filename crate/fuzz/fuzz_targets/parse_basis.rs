#![no_main]

use libfuzzer_sys::fuzz_target;
use modcurve::ingest::parse_basis_file;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = parse_basis_file(text) {
        let again = parse_basis_file(&file.to_text()).expect("canonical text parses");
        assert_eq!(again, file);
        let _ = file.into_cusp_basis();
    }
});
