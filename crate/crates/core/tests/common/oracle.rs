//! Unpruned brute force for `A^2 + q B^2 = C C*`, written against plain
//! coefficient vectors so it shares no code with the library search.

use std::collections::{BTreeSet, HashMap};

pub type Coeffs = Vec<u64>;

/// Every vector `(1, x_1, .., x_(deg-1), 1)` with entries in `[1, cap]` summing to `sum`.
pub fn monic_vectors(sum: u64, deg: usize, cap: u64) -> Vec<Coeffs> {
    let mut out = Vec::new();
    if deg == 0 {
        if sum == 1 {
            out.push(vec![1]);
        }
        return out;
    }
    if sum < 2 {
        return out;
    }
    let mut cur = vec![1u64];
    fill(sum - 2, deg - 1, cap, &mut cur, &mut out);
    out
}

fn fill(left: u64, slots: usize, cap: u64, cur: &mut Coeffs, out: &mut Vec<Coeffs>) {
    if slots == 0 {
        if left == 0 {
            let mut v = cur.clone();
            v.push(1);
            out.push(v);
        }
        return;
    }
    for x in 1..=cap.min(left) {
        cur.push(x);
        fill(left - x, slots - 1, cap, cur, out);
        cur.pop();
    }
}

fn is_palindrome(v: &[u64]) -> bool {
    v.iter().eq(v.iter().rev())
}

fn mul(x: &[u64], y: &[u64]) -> Vec<u128> {
    let mut out = vec![0u128; x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] += u128::from(*a) * u128::from(*b);
        }
    }
    out
}

fn trim(mut v: Vec<u128>) -> Vec<u128> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn is_unimodal(v: &[u64]) -> bool {
    let peak = v
        .iter()
        .enumerate()
        .max_by_key(|&(_, x)| *x)
        .map_or(0, |(i, _)| i);
    v[..=peak].windows(2).all(|w| w[0] <= w[1]) && v[peak..].windows(2).all(|w| w[0] >= w[1])
}

/// All `(A, B, C)` with positive coefficients, ends equal to 1, `A`, `B`
/// palindromic, every coefficient `<= cap`, `deg A, deg B, deg C <= max_deg`
/// and values `(a, b, c)` at `q = 1`. `C` is the lexicographically smaller of `{C, C*}`.
pub fn brute_force(
    [a, b, c]: [u64; 3],
    max_deg: usize,
    cap: u64,
    unimodal: bool,
) -> BTreeSet<(Coeffs, Coeffs, Coeffs)> {
    let mut by_product: HashMap<Vec<u128>, Vec<Coeffs>> = HashMap::new();
    for d in 0..=max_deg {
        for cv in monic_vectors(c, d, cap) {
            let rev: Coeffs = cv.iter().rev().copied().collect();
            if cv > rev {
                continue;
            }
            by_product.entry(mul(&cv, &rev)).or_default().push(cv);
        }
    }
    let pals = |s: u64| -> Vec<Coeffs> {
        (0..=max_deg)
            .flat_map(|d| monic_vectors(s, d, cap))
            .filter(|v| is_palindrome(v))
            .collect()
    };
    let (all_a, all_b) = (pals(a), pals(b));
    let mut out = BTreeSet::new();
    for av in &all_a {
        let a2 = mul(av, av);
        for bv in &all_b {
            let b2 = mul(bv, bv);
            let mut s = vec![0u128; a2.len().max(b2.len() + 1)];
            for (i, x) in a2.iter().enumerate() {
                s[i] += x;
            }
            for (i, x) in b2.iter().enumerate() {
                s[i + 1] += x;
            }
            let Some(cs) = by_product.get(&trim(s)) else {
                continue;
            };
            for cv in cs {
                if unimodal && !(is_unimodal(av) && is_unimodal(bv) && is_unimodal(cv)) {
                    continue;
                }
                out.insert((av.clone(), bv.clone(), cv.clone()));
            }
        }
    }
    out
}
