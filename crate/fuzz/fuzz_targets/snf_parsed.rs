#![no_main]

use cayley_k0::linalg::{determinant, parse_matrix, snf};
use libfuzzer_sys::fuzz_target;
use num_traits::{One, Signed, Zero};

const MAX_ENTRIES: usize = 64;
const MAX_BITS: u64 = 128;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = parse_matrix(text) else { return };
    if m.rows() * m.cols() > MAX_ENTRIES || m.entries().iter().any(|e| e.bits() > MAX_BITS) {
        return;
    }
    let d = snf(&m).expect("nonempty matrices have a Smith form");
    assert_eq!(&(&d.u * &m) * &d.v, d.s);
    assert!(determinant(&d.u).unwrap().abs().is_one());
    assert!(determinant(&d.v).unwrap().abs().is_one());
    let rank = d.rank();
    for w in d.factors[..rank].windows(2) {
        assert!(w[0].is_positive() && (&w[1] % &w[0]).is_zero());
    }
});
