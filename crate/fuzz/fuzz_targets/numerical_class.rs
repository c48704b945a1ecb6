#![no_main]

use libfuzzer_sys::fuzz_target;
use tiltstab::NumericalClass;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = s.parse::<NumericalClass>() {
        assert_eq!(c.to_string().parse::<NumericalClass>().unwrap(), c);
    }
});
