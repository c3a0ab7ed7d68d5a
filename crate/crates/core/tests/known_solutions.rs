use num_traits::ToPrimitive;
use qpyth::qtriples::{coprime_fractions, q_triple};
use qpyth::search::{search_solutions, SearchBounds};
use qpyth::triples::ClassicalTriple;

// Bounds are the degree of C and the largest coefficient of the q-triple
// itself, the tightest at which it can appear.
#[test]
fn every_q_triple_up_to_m_8_is_found() {
    for f in coprime_fractions(8) {
        let t = q_triple(f).unwrap();
        let [a, b, c] = t.classical();
        let cap = [t.a(), t.b(), t.c()]
            .iter()
            .flat_map(|p| p.coeffs())
            .map(|x| x.to_u64().unwrap())
            .max()
            .unwrap();
        let bounds = SearchBounds::new(t.c().degree().unwrap(), cap, false).unwrap();
        let set = search_solutions(&ClassicalTriple::new(a, b, c), &bounds).unwrap();
        assert!(set.contains(t.a(), t.b(), t.c()), "{f}");
    }
}
