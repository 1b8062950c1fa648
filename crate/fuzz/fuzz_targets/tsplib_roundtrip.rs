#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(first) = igx_core::parse_tsplib(text) else {
        return;
    };
    let written = first.to_tsplib().expect("parsed instances carry coordinates");
    let second = igx_core::parse_tsplib(&written).expect("serialized instance reparses");
    assert_eq!(first.len(), second.len());
    assert_eq!(first.coords(), second.coords());
});
