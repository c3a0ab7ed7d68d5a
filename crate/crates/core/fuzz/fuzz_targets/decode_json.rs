#![no_main]

use libfuzzer_sys::fuzz_target;
use qpyth::qarith::QRational;
use qpyth::qtriples::QPythTriple;
use qpyth::search::SolutionSet;
use qpyth::Poly;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn check<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(data: &[u8]) {
    if let Ok(v) = serde_json::from_slice::<T>(data) {
        let text = serde_json::to_string(&v).expect("serializes");
        assert_eq!(serde_json::from_str::<T>(&text).expect("re-decodes"), v);
    }
}

fuzz_target!(|data: &[u8]| {
    check::<Poly>(data);
    check::<QRational>(data);
    check::<QPythTriple>(data);
    check::<SolutionSet>(data);
});
