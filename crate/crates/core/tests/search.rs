mod common;

use common::oracle::brute_force;
use common::{as_vectors, coeffs};
use proptest::prelude::*;
use qpyth::qarith::Fraction;
use qpyth::qtriples::q_triple;
use qpyth::search::{search_solutions, search_solutions_serial, SearchBounds};
use qpyth::triples::{euclid_triple, ClassicalTriple};

fn agree(t: [u64; 3], deg: usize, cap: u64, unimodal: bool) {
    let target = ClassicalTriple::new(t[0].into(), t[1].into(), t[2].into());
    let bounds = SearchBounds::new(deg, cap, unimodal).unwrap();
    let got = as_vectors(&search_solutions(&target, &bounds).unwrap());
    assert_eq!(
        got,
        brute_force(t, deg, cap, unimodal),
        "{target} deg {deg} cap {cap}"
    );
}

#[test]
fn matches_brute_force_on_small_targets() {
    agree([4, 3, 5], 3, 5, false);
    agree([4, 3, 5], 6, 5, false);
    agree([12, 5, 13], 5, 13, false);
    agree([12, 5, 13], 5, 13, true);
    agree([24, 7, 25], 7, 25, false);
    agree([24, 7, 25], 7, 25, true);
    agree([40, 9, 41], 9, 4, false);
}

#[test]
fn two_known_solutions_for_24_7_25() {
    let set = search_solutions(
        &ClassicalTriple::new(24, 7, 25),
        &SearchBounds::new(7, 25, false).unwrap(),
    )
    .unwrap();
    let all = as_vectors(&set);
    let q = q_triple(Fraction::new(4, 3).unwrap()).unwrap();
    let canon = |c: Vec<u64>| {
        let r: Vec<u64> = c.iter().rev().copied().collect();
        c.min(r)
    };
    assert!(all.contains(&(coeffs(q.a()), coeffs(q.b()), canon(coeffs(q.c())))));
    assert!(all.contains(&(vec![1, 11, 11, 1], vec![1, 5, 1], vec![1, 10, 13, 1])));
}

#[test]
fn serial_and_parallel_agree() {
    for (t, deg, cap) in [
        ((12, 5, 13), 5, 13),
        ((24, 7, 25), 7, 25),
        ((40, 9, 41), 9, 5),
    ] {
        let t = ClassicalTriple::new(t.0, t.1, t.2);
        let b = SearchBounds::new(deg, cap, false).unwrap();
        assert_eq!(
            search_solutions(&t, &b).unwrap(),
            search_solutions_serial(&t, &b).unwrap()
        );
    }
}

fn small_target() -> impl Strategy<Value = [u64; 3]> {
    (2u64..6, 1u64..6)
        .prop_filter("coprime, m > n", |&(m, n)| {
            m > n && num_integer::Integer::gcd(&m, &n) == 1
        })
        .prop_map(|(m, n)| {
            let e = euclid_triple(m, n).unwrap();
            [e.a as u64, e.b as u64, e.c as u64]
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pruned_equals_unpruned(t in small_target(), deg in 1usize..7, cap in 1u64..7, uni in any::<bool>()) {
        let target = ClassicalTriple::new(t[0].into(), t[1].into(), t[2].into());
        let bounds = SearchBounds::new(deg, cap, uni).unwrap();
        let got = as_vectors(&search_solutions(&target, &bounds).unwrap());
        prop_assert_eq!(got, brute_force(t, deg, cap, uni));
    }
}
