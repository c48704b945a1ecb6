#![no_main]

use libfuzzer_sys::fuzz_target;
use tiltstab::parse_divisor_list;

fuzz_target!(|data: &[u8]| {
    let s = std::str::from_utf8(data).unwrap_or("");
    if let Ok(list) = parse_divisor_list(s) {
        let text: Vec<String> = list.iter().map(|d| format!("{},{}", d.c_h, d.c2)).collect();
        assert_eq!(parse_divisor_list(&text.join(";")).unwrap(), list);
    }
});
