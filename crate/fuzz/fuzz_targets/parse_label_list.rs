#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if data.is_empty() {
        return;
    }
    let n = 3 + (data[0] as usize % 64);
    if let Ok(text) = std::str::from_utf8(&data[1..]) {
        if let Ok(order) = igx_core::tour::parse_label_list(text, n) {
            assert!(igx_core::tour::is_permutation(&order, n));
        }
    }
});
