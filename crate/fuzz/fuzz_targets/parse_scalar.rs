#![no_main]

use libfuzzer_sys::fuzz_target;
use periplectic::scalars::parse_scalar;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = parse_scalar(s) {
        // printed form is canonical and parses back to the same value
        let printed = x.to_string();
        assert_eq!(parse_scalar(&printed).expect("printed scalar parses"), x);
    }
});
