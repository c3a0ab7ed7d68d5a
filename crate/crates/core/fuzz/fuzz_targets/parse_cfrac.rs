#![no_main]

use libfuzzer_sys::fuzz_target;
use qpyth::qarith::{parse_terms, CFrac};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_terms(s);
    if let Ok(cf) = s.parse::<CFrac>() {
        let back: CFrac = cf.to_string().parse().expect("display re-parses");
        assert_eq!(back, cf);
        // the canonical expansion of the value has the same value
        if let Ok(f) = cf.to_fraction() {
            let canon = CFrac::expand(f).expect("fraction expands");
            assert_eq!(canon.to_fraction().unwrap(), f);
        }
    }
});
