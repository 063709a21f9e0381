#![no_main]
use grammate::{parse_matrix, serialize_matrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = parse_matrix(text) {
            let again = parse_matrix(&serialize_matrix(&m)).expect("round trip");
            assert_eq!(again, m);
        }
    }
});
