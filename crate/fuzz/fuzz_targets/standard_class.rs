#![no_main]

use libfuzzer_sys::fuzz_target;
use tiltstab::StandardClass;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(tag) = s.parse::<StandardClass>() {
            assert_eq!(tag.to_string().parse::<StandardClass>().unwrap(), tag);
        }
    }
});
