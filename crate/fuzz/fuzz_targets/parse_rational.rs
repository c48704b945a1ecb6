#![no_main]

use libfuzzer_sys::fuzz_target;
use tiltstab::rational::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(x) = parse_rational(s) {
        let canon = format_rational(&x);
        assert_eq!(parse_rational(&canon).unwrap(), x);
    }
});
