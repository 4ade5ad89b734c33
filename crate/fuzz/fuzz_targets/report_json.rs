#![no_main]

use libfuzzer_sys::fuzz_target;
use periplectic::report::ReportSet;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(set) = ReportSet::from_json(s) {
        let again = ReportSet::from_json(&set.to_json()).expect("serialized set validates");
        assert_eq!(again, set);
        let _ = set.exit_code();
    }
});
