#![no_main]
use grammate::{parse_binary, serialize_matrix, Dense};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = parse_binary(text) {
            let again = parse_binary(&serialize_matrix(&m)).expect("round trip");
            assert_eq!(again, m);
            assert_eq!(m.gram_rows().rows(), m.rows());
        }
    }
});
