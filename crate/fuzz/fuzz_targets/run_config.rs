#![no_main]

use libfuzzer_sys::fuzz_target;
use tiltstab_cli::RunConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = RunConfig::from_json(s) {
        let canon = cfg.to_json();
        let back = RunConfig::from_json(&canon).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.to_json(), canon);
    }
});
