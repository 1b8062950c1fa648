#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(inst) = igx_core::parse_tsplib(text) {
            let n = inst.len();
            assert!(n >= 3);
            // every accepted instance must serve symmetric distances
            for i in 0..n.min(16) {
                assert_eq!(inst.distance(i, i), 0);
                let j = n - 1 - i;
                assert_eq!(inst.distance(i, j), inst.distance(j, i));
            }
        }
    }
});
