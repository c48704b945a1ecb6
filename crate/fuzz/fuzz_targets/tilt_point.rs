#![no_main]

use libfuzzer_sys::fuzz_target;
use tiltstab::TiltPoint;

fuzz_target!(|data: &[u8]| {
    let s = std::str::from_utf8(data).unwrap_or("");
    if let Ok(p) = s.parse::<TiltPoint>() {
        assert_eq!(p.to_string().parse::<TiltPoint>().unwrap(), p);
    }
});
