#![no_main]

use libfuzzer_sys::fuzz_target;
use qpyth::qarith::Fraction;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = s.parse::<Fraction>() {
        let back: Fraction = f.to_string().parse().expect("display re-parses");
        assert_eq!(back, f);
        let _ = f.inverse();
    }
});
