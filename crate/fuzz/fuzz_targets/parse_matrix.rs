#![no_main]

use cayley_k0::linalg::{parse_matrix, write_matrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = parse_matrix(text) else { return };
    let printed = write_matrix(&m);
    let again = parse_matrix(&printed).expect("printed matrices parse");
    assert_eq!(m, again);
});
