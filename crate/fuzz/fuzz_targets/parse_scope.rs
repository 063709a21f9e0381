#![no_main]
use grammate::oracle::Scope;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(scope) = text.parse::<Scope>() {
            let _ = scope.name();
        }
    }
});
