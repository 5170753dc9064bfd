//! Fuzzes the report decoder and checks that the canonical JSON form is a
//! fixpoint: serializing a parsed report and parsing it back must reproduce
//! the same bytes. (Non-finite floats smuggled in via huge exponents
//! serialize to null and fail the reparse, which legitimately skips the
//! fixpoint check.)

#![no_main]

use libfuzzer_sys::fuzz_target;
use threatpath::report::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(report) = Report::from_json(data) else {
        return;
    };
    let bytes = report.to_json_bytes();
    if let Ok(decoded) = Report::from_json(&bytes) {
        assert_eq!(
            bytes,
            decoded.to_json_bytes(),
            "canonical report form must be stable"
        );
    }
});
