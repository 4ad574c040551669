#![no_main]

use cayley_k0::graph::DirectedMultigraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = DirectedMultigraph::from_json(text) else { return };
    let printed = g.to_json().to_string();
    let again = DirectedMultigraph::from_json(&printed).expect("printed graphs parse");
    assert_eq!(g, again);
});
