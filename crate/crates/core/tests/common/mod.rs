#![allow(dead_code)]

pub mod oracle;

use num_traits::ToPrimitive;
use qpyth::search::SolutionSet;
use qpyth::Poly;

pub fn coeffs(p: &Poly) -> Vec<u64> {
    p.coeffs()
        .iter()
        .map(|c| c.to_u64().expect("small nonnegative coefficient"))
        .collect()
}

pub fn as_vectors(set: &SolutionSet) -> std::collections::BTreeSet<(Vec<u64>, Vec<u64>, Vec<u64>)> {
    set.solutions()
        .iter()
        .map(|s| (coeffs(&s.a), coeffs(&s.b), coeffs(&s.c)))
        .collect()
}
