//! Bounded exhaustive search for all `(A, B, C)` satisfying conditions 1-3
//! over a given classical triple.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::qtriples::{condition_report, verify_pythagoras};
use crate::triples::ClassicalTriple;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "BoundsRecord")]
pub struct SearchBounds {
    max_deg_c: usize,
    max_coeff: u64,
    require_unimodal: bool,
}

#[derive(Deserialize)]
struct BoundsRecord {
    max_deg_c: usize,
    max_coeff: u64,
    require_unimodal: bool,
}

impl TryFrom<BoundsRecord> for SearchBounds {
    type Error = Error;
    fn try_from(r: BoundsRecord) -> Result<Self> {
        SearchBounds::new(r.max_deg_c, r.max_coeff, r.require_unimodal)
    }
}

impl SearchBounds {
    pub fn new(max_deg_c: usize, max_coeff: u64, require_unimodal: bool) -> Result<Self> {
        if max_deg_c < 1 {
            return Err(Error::InvalidBounds("max_deg_c must be >= 1".into()));
        }
        if max_coeff < 1 {
            return Err(Error::InvalidBounds("max_coeff must be >= 1".into()));
        }
        Ok(SearchBounds {
            max_deg_c,
            max_coeff,
            require_unimodal,
        })
    }

    pub fn max_deg_c(&self) -> usize {
        self.max_deg_c
    }

    pub fn max_coeff(&self) -> u64 {
        self.max_coeff
    }

    pub fn require_unimodal(&self) -> bool {
        self.require_unimodal
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(into = "SolutionRecord", try_from = "SolutionRecord")]
pub struct Solution {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl Solution {
    /// Nonzero terms of `A`, `B`, `C`.
    pub fn terms(&self) -> [usize; 3] {
        [
            self.a.term_count(),
            self.b.term_count(),
            self.c.term_count(),
        ]
    }

    fn order_key(&self, other: &Solution) -> Ordering {
        self.c
            .degree()
            .cmp(&other.c.degree())
            .then_with(|| self.c.lex_cmp(&other.c))
            .then_with(|| self.a.lex_cmp(&other.a))
            .then_with(|| self.b.lex_cmp(&other.b))
    }
}

#[derive(Serialize, Deserialize)]
struct SolutionRecord {
    #[serde(rename = "A")]
    a: Poly,
    #[serde(rename = "B")]
    b: Poly,
    #[serde(rename = "C")]
    c: Poly,
    terms: [usize; 3],
}

impl From<Solution> for SolutionRecord {
    fn from(s: Solution) -> Self {
        SolutionRecord {
            terms: s.terms(),
            a: s.a,
            b: s.b,
            c: s.c,
        }
    }
}

impl TryFrom<SolutionRecord> for Solution {
    type Error = Error;
    fn try_from(r: SolutionRecord) -> Result<Self> {
        let s = Solution {
            a: r.a,
            b: r.b,
            c: r.c,
        };
        if s.terms() != r.terms {
            return Err(Error::Parse("term counts do not match".into()));
        }
        Ok(s)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "SolutionSetRecord")]
pub struct SolutionSet {
    #[serde(serialize_with = "ser_triple")]
    target: ClassicalTriple,
    bounds: SearchBounds,
    solutions: Vec<Solution>,
}

fn ser_triple<S: serde::Serializer>(
    t: &ClassicalTriple,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [t.a, t.b, t.c].serialize(s)
}

#[derive(Deserialize)]
struct SolutionSetRecord {
    target: [i128; 3],
    bounds: SearchBounds,
    solutions: Vec<Solution>,
}

impl TryFrom<SolutionSetRecord> for SolutionSet {
    type Error = Error;
    fn try_from(r: SolutionSetRecord) -> Result<Self> {
        let [a, b, c] = r.target;
        let target = ClassicalTriple::new(a, b, c);
        check_target(&target)?;
        for s in &r.solutions {
            if !is_sound(s, &target, &r.bounds) {
                return Err(Error::Parse(format!("unsound solution C = {}", s.c)));
            }
        }
        if !r
            .solutions
            .windows(2)
            .all(|w| w[0].order_key(&w[1]) == Ordering::Less)
        {
            return Err(Error::Parse("solutions not sorted or duplicated".into()));
        }
        Ok(SolutionSet {
            target,
            bounds: r.bounds,
            solutions: r.solutions,
        })
    }
}

impl SolutionSet {
    pub fn target(&self) -> &ClassicalTriple {
        &self.target
    }

    pub fn bounds(&self) -> &SearchBounds {
        &self.bounds
    }

    pub fn solutions(&self) -> &[Solution] {
        &self.solutions
    }

    pub fn contains(&self, a: &Poly, b: &Poly, c: &Poly) -> bool {
        let cs = c.reciprocal().ok();
        self.solutions
            .iter()
            .any(|s| &s.a == a && &s.b == b && (&s.c == c || Some(&s.c) == cs.as_ref()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct SearchStats {
    /// Partial assignments visited.
    pub nodes: usize,
    /// Complete `(A, B, C)` candidates checked against the equation.
    pub candidates: usize,
    pub solutions: usize,
}

fn to_poly(c: &[u64]) -> Poly {
    Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

/// Palindromic polynomials of exact degree `deg` with coefficients in `1..=cap`,
/// both ends 1 and coefficient sum `sum`, in increasing lexicographic order.
pub fn enumerate_palindromic_capped(sum: u64, deg: usize, cap: u64) -> Vec<Poly> {
    if deg == 0 {
        return if sum == 1 {
            vec![Poly::one()]
        } else {
            Vec::new()
        };
    }
    if sum < 2 || cap < 1 {
        return Vec::new();
    }
    let pairs = (deg - 1) / 2;
    let middle = deg.is_multiple_of(2);
    let mut coeffs = vec![0u64; deg + 1];
    coeffs[0] = 1;
    coeffs[deg] = 1;
    let mut out = Vec::new();
    pal_rec(&mut coeffs, 1, pairs, middle, sum - 2, cap, &mut out);
    out
}

pub fn enumerate_palindromic(sum: u64, deg: usize) -> Vec<Poly> {
    enumerate_palindromic_capped(sum, deg, u64::MAX)
}

fn pal_rec(
    coeffs: &mut [u64],
    i: usize,
    pairs: usize,
    middle: bool,
    rem: u64,
    cap: u64,
    out: &mut Vec<Poly>,
) {
    let deg = coeffs.len() - 1;
    if i > pairs {
        if middle {
            if rem >= 1 && rem <= cap {
                coeffs[deg / 2] = rem;
                out.push(to_poly(coeffs));
            }
        } else if rem == 0 {
            out.push(to_poly(coeffs));
        }
        return;
    }
    let left = (pairs - i) as u128;
    let mid = u128::from(middle);
    for x in 1..=cap {
        let used = 2 * u128::from(x);
        if used + 2 * left + mid > u128::from(rem) {
            break;
        }
        let r = rem - 2 * x;
        if u128::from(r) > 2 * left * u128::from(cap) + mid * u128::from(cap) {
            continue;
        }
        coeffs[i] = x;
        coeffs[deg - i] = x;
        pal_rec(coeffs, i + 1, pairs, middle, r, cap, out);
    }
}

/// Every `C` with coefficients in `1..=cap`, both ends 1, `C(1) = c` and
/// `C C* = S`, keeping the lexicographically smaller member of each `{C, C*}`.
pub fn solve_for_c_capped(s: &Poly, c: u64, cap: u64) -> Vec<Poly> {
    let Some(ds) = s.degree() else {
        return Vec::new();
    };
    if ds % 2 == 1 || !s.constant_term().is_one() {
        return Vec::new();
    }
    let d = ds / 2;
    if d == 0 {
        return if c == 1 {
            vec![Poly::one()]
        } else {
            Vec::new()
        };
    }
    if c < 2 {
        return Vec::new();
    }
    let mut coeffs = vec![0u64; d + 1];
    coeffs[0] = 1;
    coeffs[d] = 1;
    let mut out = Vec::new();
    solve_rec(s, &mut coeffs, 1, c - 2, cap, &mut out);
    out.sort_by(|x, y| x.lex_cmp(y));
    out.dedup();
    out
}

pub fn solve_for_c(s: &Poly, c: u64) -> Vec<Poly> {
    solve_for_c_capped(s, c, u64::MAX)
}

// Coefficient k of C C* is sum_{i=0..k} c_i c_{D-k+i}; the two ends give
// c_k + c_{D-k}, everything between is already fixed.
fn solve_rec(s: &Poly, coeffs: &mut [u64], k: usize, budget: u64, cap: u64, out: &mut Vec<Poly>) {
    let d = coeffs.len() - 1;
    if 2 * k > d {
        if budget != 0 {
            return;
        }
        let cand = to_poly(coeffs);
        let star = cand.reciprocal().expect("nonzero");
        if cand.lex_cmp(&star) != Ordering::Greater && &(&cand * &star) == s {
            out.push(cand);
        }
        return;
    }
    let mut known = BigInt::zero();
    for i in 1..k {
        known += BigInt::from(coeffs[i]) * BigInt::from(coeffs[d - k + i]);
    }
    let Some(target) = (s.coeff(k) - known).to_u64() else {
        return;
    };
    let single = 2 * k == d;
    // positions strictly between k and d-k still to fill, each at least 1
    let later = (d - 2 * k).saturating_sub(1) as u64;
    if single {
        if target % 2 != 0 {
            return;
        }
        let x = target / 2;
        if x < 1 || x > cap || x > budget {
            return;
        }
        coeffs[k] = x;
        solve_rec(s, coeffs, k + 1, budget - x, cap, out);
        return;
    }
    if target < 2 || target.saturating_add(later) > budget {
        return;
    }
    let lo = target.saturating_sub(cap).max(1);
    let hi = cap.min(target - 1);
    for x in lo..=hi {
        coeffs[k] = x;
        coeffs[d - k] = target - x;
        solve_rec(s, coeffs, k + 1, budget - target, cap, out);
    }
}

fn leg(x: i128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow("target component"))
}

fn check_target(t: &ClassicalTriple) -> Result<()> {
    if !t.is_standard() {
        return Err(Error::NonStandardTarget(t.to_string()));
    }
    Ok(())
}

fn is_sound(s: &Solution, t: &ClassicalTriple, bounds: &SearchBounds) -> bool {
    let r = condition_report(&s.a, &s.b, &s.c);
    let cap = BigInt::from(bounds.max_coeff);
    let capped = |p: &Poly| p.coeffs().iter().all(|x| x <= &cap);
    verify_pythagoras(&s.a, &s.b, &s.c)
        && r.all_proven()
        && (!bounds.require_unimodal || r.unimodal())
        && s.a.eval_one() == BigInt::from(t.a)
        && s.b.eval_one() == BigInt::from(t.b)
        && s.c.eval_one() == BigInt::from(t.c)
        && s.c.degree().is_some_and(|dc| dc <= bounds.max_deg_c)
        && capped(&s.a)
        && capped(&s.b)
        && capped(&s.c)
        && s.c.lex_cmp(&s.c.reciprocal().expect("nonzero")) != Ordering::Greater
}

/// Largest leg accepted by the search; keeps every partial sum inside `u128`.
pub const MAX_SEARCH_LEG: u64 = 1 << 40;

#[derive(Clone, Copy)]
struct Item {
    d: usize,
    a1: Option<u128>,
}

struct Dfs<'a> {
    d: usize,
    cap: u128,
    bounds: &'a SearchBounds,
    a: Vec<u128>,
    b: Vec<u128>,
    c: Vec<u128>,
    nodes: usize,
    leaves: usize,
    out: Vec<Solution>,
}

// Range of sum x_i^2 over `n` integers in [1, cap] with sum `s`.
fn square_range(s: u128, n: usize, cap: u128) -> (u128, u128) {
    let n = n as u128;
    if n == 0 {
        return (0, 0);
    }
    let min = s * s / n + u128::from(!(s * s).is_multiple_of(n));
    if cap == 1 {
        return (min, n);
    }
    let extra = s.saturating_sub(n);
    let full = (extra / (cap - 1)).min(n);
    let rest = if full < n {
        (1 + extra % (cap - 1)).pow(2) + (n - full - 1)
    } else {
        0
    };
    (min, full * cap * cap + rest)
}

fn fits(left: u128, slots: usize, cap: u128) -> bool {
    left >= slots as u128 && left <= cap.saturating_mul(slots as u128)
}

impl<'a> Dfs<'a> {
    fn new(d: usize, cap: u128, bounds: &'a SearchBounds) -> Self {
        let mut a = vec![0; d + 1];
        let mut b = vec![0; d];
        let mut c = vec![0; d + 1];
        a[0] = 1;
        a[d] = 1;
        b[0] = 1;
        b[d - 1] = 1;
        c[0] = 1;
        c[d] = 1;
        Dfs {
            d,
            cap,
            bounds,
            a,
            b,
            c,
            nodes: 0,
            leaves: 0,
            out: Vec::new(),
        }
    }

    // Unassigned inner slots after step k (all of a_1..a_k, b_1..b_(k-1),
    // c_1..c_k and their mirrors fixed).
    fn a_free(&self, k: usize) -> usize {
        (self.d - 1).saturating_sub(2 * k)
    }

    fn b_free(&self, k: usize) -> usize {
        // B has degree d-1; slots 1..=k-1 and their mirrors are fixed
        if self.d == 1 {
            0
        } else {
            (self.d - 2).saturating_sub(2 * k.saturating_sub(1))
        }
    }

    fn c_free(&self, k: usize) -> usize {
        (self.d - 1).saturating_sub(2 * k)
    }

    fn run(&mut self, k: usize, a1: Option<u128>, left: [u128; 3]) {
        self.nodes += 1;
        let d = self.d;
        if 2 * k > d {
            self.leaf(left);
            return;
        }
        let [a_left, b_left, c_left] = left;
        // b_(k-1) and its mirror
        let (b_lo, b_hi) = if k >= 2 { (1, self.cap) } else { (0, 0) };
        for bv in b_lo..=b_hi {
            let b_left = if k >= 2 {
                let used = 2 * bv;
                if used > b_left {
                    break;
                }
                self.b[k - 1] = bv;
                self.b[d - k] = bv;
                b_left - used
            } else {
                b_left
            };
            if !fits(b_left, self.b_free(k), self.cap) {
                if k >= 2 {
                    continue;
                }
                return;
            }
            let middle_a = 2 * k == d;
            let (a_lo, a_hi) = match (middle_a, a1) {
                (true, _) => (a_left, a_left),
                (false, Some(x)) if k == 1 => (x, x),
                _ => (1, self.cap),
            };
            if a_lo < 1 || a_hi > self.cap {
                continue;
            }
            for av in a_lo..=a_hi {
                let (a_next, ok) = if middle_a {
                    (0, true)
                } else {
                    match a_left.checked_sub(2 * av) {
                        Some(r) => (r, true),
                        None => (0, false),
                    }
                };
                if !ok {
                    break;
                }
                if !middle_a && !fits(a_next, self.a_free(k), self.cap) {
                    continue;
                }
                self.a[k] = av;
                self.a[d - k] = av;
                self.step_c(k, a1, [a_next, b_left, c_left]);
            }
        }
    }

    fn step_c(&mut self, k: usize, a1: Option<u128>, left: [u128; 3]) {
        let d = self.d;
        let a2: u128 = (0..=k).map(|i| self.a[i] * self.a[k - i]).sum();
        let b2: u128 = (0..k).map(|i| self.b[i] * self.b[k - 1 - i]).sum();
        let known: u128 = (1..k).map(|i| self.c[i] * self.c[d - k + i]).sum();
        let Some(t) = (a2 + b2).checked_sub(known) else {
            return;
        };
        let c_left = left[2];
        if 2 * k == d {
            if t % 2 != 0 {
                return;
            }
            let x = t / 2;
            if x < 1 || x > self.cap || x != c_left {
                return;
            }
            self.c[k] = x;
            self.run(k + 1, a1, [left[0], left[1], 0]);
            return;
        }
        if t < 2 || t > c_left || !fits(c_left - t, self.c_free(k), self.cap) {
            return;
        }
        let lo = t.saturating_sub(self.cap).max(1);
        let hi = self.cap.min(t - 1);
        if 2 * k + 1 == d {
            self.last_pair(k, t, lo, hi, left);
            return;
        }
        let next = [left[0], left[1], c_left - t];
        for x in lo..=hi {
            self.c[k] = x;
            self.c[d - k] = t - x;
            if self.squares_feasible(k, next) {
                self.run(k + 1, a1, next);
            }
        }
    }

    // Necessary condition from sum c_i^2 = sum a_i^2 + sum b_i^2 once every
    // slot up to k (and its mirror) is fixed.
    fn squares_feasible(&self, k: usize, [a_left, b_left, c_left]: [u128; 3]) -> bool {
        let d = self.d;
        let fixed = |v: &[u128], lo: usize, hi: usize| -> u128 {
            v.iter()
                .enumerate()
                .filter(|&(i, _)| i <= lo || i >= hi)
                .map(|(_, x)| x * x)
                .sum()
        };
        let sa = fixed(&self.a, k, d - k);
        let sb = fixed(&self.b, k - 1, d - k);
        let sc = fixed(&self.c, k, d - k);
        let (a_min, a_max) = square_range(a_left, self.a_free(k), self.cap);
        let (b_min, b_max) = square_range(b_left, self.b_free(k), self.cap);
        let (c_min, c_max) = square_range(c_left, self.c_free(k), self.cap);
        sc + c_max >= sa + sb + a_min + b_min && sc + c_min <= sa + sb + a_max + b_max
    }

    // Odd degree, final pair (c_k, c_(k+1)) with c_k + c_(k+1) = t. Palindromy
    // turns the middle coefficient of A^2 + q B^2 = C C* into
    // sum c_i^2 = sum a_i^2 + sum b_i^2, a quadratic in c_k.
    fn last_pair(&mut self, k: usize, t: u128, lo: u128, hi: u128, left: [u128; 3]) {
        let d = self.d;
        if left[0] != 0 || t != left[2] {
            return;
        }
        let e = d - 1;
        if e >= 2 {
            if left[1] < 1 || left[1] > self.cap {
                return;
            }
            self.b[e / 2] = left[1];
        } else if left[1] != 0 {
            return;
        }
        let sq = |v: &[u128]| v.iter().map(|x| x * x).sum::<u128>();
        let known: u128 = self
            .c
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k && i != k + 1)
            .map(|(_, x)| x * x)
            .sum();
        let Some(r) = (sq(&self.a) + sq(&self.b)).checked_sub(known) else {
            return;
        };
        // x^2 + (t - x)^2 = r  <=>  (2x - t)^2 = 2r - t^2
        let Some(disc) = (2 * r).checked_sub(t * t) else {
            return;
        };
        let root = disc.sqrt();
        if root * root != disc || root > t || !(t + root).is_multiple_of(2) {
            return;
        }
        let mut xs = vec![(t - root) / 2, (t + root) / 2];
        xs.dedup();
        for x in xs {
            if x < lo || x > hi {
                continue;
            }
            self.c[k] = x;
            self.c[k + 1] = t - x;
            self.run(k + 1, None, [0, left[1], 0]);
        }
    }

    fn leaf(&mut self, [a_left, b_left, c_left]: [u128; 3]) {
        let d = self.d;
        if a_left != 0 || c_left != 0 {
            return;
        }
        // the only slot of B never fixed during the descent is its middle
        let e = d - 1;
        if e >= 2 && e.is_multiple_of(2) {
            if b_left < 1 || b_left > self.cap {
                return;
            }
            self.b[e / 2] = b_left;
        } else if b_left != 0 {
            return;
        }
        self.leaves += 1;
        if self.c.iter().cmp(self.c.iter().rev()) == Ordering::Greater {
            return;
        }
        let mut lhs = vec![0u128; 2 * d + 1];
        for (i, x) in self.a.iter().enumerate() {
            for (j, y) in self.a.iter().enumerate() {
                lhs[i + j] += x * y;
            }
        }
        for (i, x) in self.b.iter().enumerate() {
            for (j, y) in self.b.iter().enumerate() {
                lhs[i + j + 1] += x * y;
            }
        }
        let mut rhs = vec![0u128; 2 * d + 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in self.c.iter().rev().enumerate() {
                rhs[i + j] += x * y;
            }
        }
        if lhs != rhs {
            return;
        }
        let conv = |v: &[u128]| Poly::new(v.iter().map(|&x| BigInt::from(x)).collect());
        let sol = Solution {
            a: conv(&self.a),
            b: conv(&self.b),
            c: conv(&self.c),
        };
        if self.bounds.require_unimodal && !condition_report(&sol.a, &sol.b, &sol.c).unimodal() {
            return;
        }
        self.out.push(sol);
    }
}

struct Plan {
    legs: [u128; 3],
    cap: u128,
    items: Vec<Item>,
}

fn plan(target: &ClassicalTriple, bounds: &SearchBounds) -> Result<Plan> {
    check_target(target)?;
    let legs = [leg(target.a)?, leg(target.b)?, leg(target.c)?];
    if legs.iter().any(|&x| x > MAX_SEARCH_LEG) {
        return Err(Error::Overflow("search target above 2^40"));
    }
    let cap = u128::from(bounds.max_coeff.min(legs[2]));
    let a = u128::from(legs[0]);
    let mut items = Vec::new();
    for d in 1..=bounds.max_deg_c {
        if d >= 3 {
            let top = cap.min(a.saturating_sub(2) / 2);
            items.extend((1..=top).map(|x| Item { d, a1: Some(x) }));
        } else {
            items.push(Item { d, a1: None });
        }
    }
    Ok(Plan {
        legs: legs.map(u128::from),
        cap,
        items,
    })
}

fn run_item(p: &Plan, item: Item, bounds: &SearchBounds) -> (Vec<Solution>, usize, usize) {
    let [a, b, c] = p.legs;
    let d = item.d;
    let b_ends = if d == 1 { 1 } else { 2 };
    let (Some(al), Some(bl), Some(cl)) =
        (a.checked_sub(2), b.checked_sub(b_ends), c.checked_sub(2))
    else {
        return (Vec::new(), 0, 0);
    };
    let mut dfs = Dfs::new(d, p.cap, bounds);
    dfs.run(1, item.a1, [al, bl, cl]);
    (dfs.out, dfs.nodes, dfs.leaves)
}

fn finish(
    target: &ClassicalTriple,
    bounds: &SearchBounds,
    parts: Vec<(Vec<Solution>, usize, usize)>,
) -> (SolutionSet, SearchStats) {
    let mut stats = SearchStats::default();
    let mut solutions = Vec::new();
    for (s, nodes, leaves) in parts {
        stats.nodes += nodes;
        stats.candidates += leaves;
        solutions.extend(s);
    }
    solutions.sort_by(Solution::order_key);
    solutions.dedup();
    debug_assert!(solutions.iter().all(|s| is_sound(s, target, bounds)));
    stats.solutions = solutions.len();
    (
        SolutionSet {
            target: *target,
            bounds: *bounds,
            solutions,
        },
        stats,
    )
}

/// Parallel search; the result does not depend on scheduling.
pub fn search_with_stats(
    target: &ClassicalTriple,
    bounds: &SearchBounds,
) -> Result<(SolutionSet, SearchStats)> {
    let p = plan(target, bounds)?;
    let parts = p
        .items
        .par_iter()
        .map(|&it| run_item(&p, it, bounds))
        .collect();
    Ok(finish(target, bounds, parts))
}

pub fn search_solutions(target: &ClassicalTriple, bounds: &SearchBounds) -> Result<SolutionSet> {
    search_with_stats(target, bounds).map(|(s, _)| s)
}

pub fn search_solutions_serial(
    target: &ClassicalTriple,
    bounds: &SearchBounds,
) -> Result<SolutionSet> {
    let p = plan(target, bounds)?;
    let parts = p.items.iter().map(|&it| run_item(&p, it, bounds)).collect();
    Ok(finish(target, bounds, parts).0)
}
