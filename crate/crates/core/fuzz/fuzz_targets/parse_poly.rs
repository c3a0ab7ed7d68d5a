#![no_main]

use libfuzzer_sys::fuzz_target;
use qpyth::Poly;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = s.parse::<Poly>() {
        let back: Poly = p.to_string().parse().expect("display re-parses");
        assert_eq!(back, p);
    }
    if let Ok(p) = Poly::from_coeff_list(s) {
        let list = format!(
            "{:?}",
            p.coeffs()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
        assert_eq!(Poly::from_coeff_list(&list).unwrap(), p);
    }
});
