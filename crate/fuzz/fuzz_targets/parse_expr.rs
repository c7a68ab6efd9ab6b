//! The parser must never panic, hang, or blow up on arbitrary input; errors
//! are the expected outcome for most of the corpus.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    let _ = ivp::expr::parse(input);
});
