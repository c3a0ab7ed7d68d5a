//! q-deformed Pythagorean triples `(A, B, C)` with `A^2 + q B^2 = C C*`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::qarith::{
    cf_expand, q_int, q_rational, q_rational_inverse, transpose_word_matrix, word_matrix,
    x0_matrix, Fraction, Mat2Poly,
};
use crate::triples::{euclid_triple, pythagorean_tree, Tree, TreeNode};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(into = "QTripleRecord", try_from = "QTripleRecord")]
pub struct QPythTriple {
    base: Fraction,
    a: Poly,
    b: Poly,
    c: Poly,
}

impl QPythTriple {
    /// Checks the q-Pythagoras equation and that `q = 1` gives Euclid's triple.
    pub fn new(base: Fraction, a: Poly, b: Poly, c: Poly) -> Result<Self> {
        let bad = |why: &str| {
            Err(Error::InvalidFraction(format!(
                "q-triple for {base}: {why}"
            )))
        };
        if c.is_zero() || !verify_pythagoras(&a, &b, &c) {
            return bad("A^2 + q B^2 != C C*");
        }
        let e = euclid_triple(base.num(), base.den())?;
        let at_one = [a.eval_one(), b.eval_one(), c.eval_one()];
        if at_one != [e.a.into(), e.b.into(), e.c.into()] {
            return bad("value at q = 1 differs from the classical triple");
        }
        Ok(QPythTriple { base, a, b, c })
    }

    pub fn base(&self) -> Fraction {
        self.base
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn c(&self) -> &Poly {
        &self.c
    }

    pub fn c_star(&self) -> Poly {
        self.c.reciprocal().expect("C is nonzero")
    }

    /// `(A(1), B(1), C(1))`.
    pub fn classical(&self) -> [i128; 3] {
        let e = euclid_triple(self.base.num(), self.base.den()).expect("validated base");
        [e.a, e.b, e.c]
    }

    pub fn conditions(&self) -> ConditionReport {
        check_conditions(self)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QTripleRecord {
    pub base: Fraction,
    #[serde(rename = "A")]
    pub a: Poly,
    #[serde(rename = "B")]
    pub b: Poly,
    #[serde(rename = "C")]
    pub c: Poly,
    #[serde(rename = "Cstar")]
    pub c_star: Poly,
    pub classical: [i128; 3],
    pub conditions: ConditionReport,
}

impl From<QPythTriple> for QTripleRecord {
    fn from(t: QPythTriple) -> Self {
        QTripleRecord {
            c_star: t.c_star(),
            classical: t.classical(),
            conditions: t.conditions(),
            base: t.base,
            a: t.a,
            b: t.b,
            c: t.c,
        }
    }
}

impl TryFrom<QTripleRecord> for QPythTriple {
    type Error = Error;
    fn try_from(r: QTripleRecord) -> Result<Self> {
        let t = QPythTriple::new(r.base, r.a, r.b, r.c)?;
        if r.c_star != t.c_star() || r.classical != t.classical() || r.conditions != t.conditions()
        {
            return Err(Error::Parse("derived fields do not match A, B, C".into()));
        }
        Ok(t)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct PolyFlags3 {
    #[serde(rename = "A")]
    pub a: bool,
    #[serde(rename = "B")]
    pub b: bool,
    #[serde(rename = "C")]
    pub c: bool,
}

impl PolyFlags3 {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct PalindromeFlags {
    #[serde(rename = "A")]
    pub a: bool,
    #[serde(rename = "B")]
    pub b: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct MonicFlags {
    #[serde(rename = "A")]
    pub a: bool,
    #[serde(rename = "B")]
    pub b: bool,
    #[serde(rename = "C")]
    pub c: bool,
    #[serde(rename = "Cstar")]
    pub c_star: bool,
}

/// Conditions 1-3 and the conjectural unimodality, each per polynomial.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ConditionReport {
    pub positive: PolyFlags3,
    pub palindromic: PalindromeFlags,
    pub monic: MonicFlags,
    pub unimodal: PolyFlags3,
}

impl ConditionReport {
    pub fn con1(&self) -> bool {
        self.positive.all()
    }

    pub fn con2(&self) -> bool {
        self.palindromic.a && self.palindromic.b
    }

    pub fn con3(&self) -> bool {
        let m = &self.monic;
        m.a && m.b && m.c && m.c_star
    }

    /// Conditions 1-3.
    pub fn all_proven(&self) -> bool {
        self.con1() && self.con2() && self.con3()
    }

    pub fn unimodal(&self) -> bool {
        self.unimodal.all()
    }
}

pub fn condition_report(a: &Poly, b: &Poly, c: &Poly) -> ConditionReport {
    let pal = |p: &Poly| p.is_palindromic().unwrap_or(false);
    let c_star = c.reciprocal().unwrap_or_default();
    ConditionReport {
        positive: PolyFlags3 {
            a: a.has_positive_coeffs(),
            b: b.has_positive_coeffs(),
            c: c.has_positive_coeffs(),
        },
        palindromic: PalindromeFlags {
            a: pal(a),
            b: pal(b),
        },
        monic: MonicFlags {
            a: a.is_monic_both_ends(),
            b: b.is_monic_both_ends(),
            c: c.is_monic_both_ends(),
            c_star: c_star.is_monic_both_ends(),
        },
        unimodal: PolyFlags3 {
            a: !a.is_zero() && a.is_unimodal(),
            b: !b.is_zero() && b.is_unimodal(),
            c: !c.is_zero() && c.is_unimodal(),
        },
    }
}

pub fn check_conditions(t: &QPythTriple) -> ConditionReport {
    condition_report(&t.a, &t.b, &t.c)
}

/// `A^2 + q B^2 == C C*`.
pub fn verify_pythagoras(a: &Poly, b: &Poly, c: &Poly) -> bool {
    match c.reciprocal() {
        Ok(cs) => a.square() + b.square().shift(1) == c * &cs,
        Err(_) => false,
    }
}

fn require_above_one(f: Fraction) -> Result<()> {
    if !f.at_least_one() {
        return Err(Error::FractionBelowOne(f.to_string()));
    }
    if f.is_one() {
        return Err(Error::DegenerateBase(f.to_string()));
    }
    Ok(())
}

/// `A X0 A^T`, equal to `[[q N^2, N D], [q N D, D^2]]`.
pub fn q_matrix(f: Fraction) -> Result<Mat2Poly> {
    require_above_one(f)?;
    let cf = cf_expand(f)?;
    Ok(&(&word_matrix(&cf) * &x0_matrix()) * &transpose_word_matrix(&cf))
}

/// `C = q N^2 + D^2`.
pub fn q_trace_c(f: Fraction) -> Result<Poly> {
    require_above_one(f)?;
    let r = q_rational(f)?;
    Ok(r.num().square().shift(1) + r.den().square())
}

/// `A = q N N' + D D'`, `B = N D' - D N'`, `C = q N^2 + D^2`, where
/// `N'/D'` is the q-deformation of the inverse fraction.
pub fn q_triple(f: Fraction) -> Result<QPythTriple> {
    require_above_one(f)?;
    let r = q_rational(f)?;
    let inv = q_rational_inverse(&r)?;
    let (n, d) = (r.num(), r.den());
    let (ni, di) = (inv.num(), inv.den());
    let a = (n * ni).shift(1) + d * di;
    let b = n * di - d * ni;
    let c = n.square().shift(1) + d.square();
    QPythTriple::new(f, a, b, c)
}

/// `A = (1 + q^n)[n]`, `B = [n+1][n-1]`, `C = 1 + q [n]^2`.
pub fn series_solution(n: u64) -> Result<QPythTriple> {
    if n < 2 {
        return Err(Error::DegenerateBase(format!("{n}/1")));
    }
    let k = i64::try_from(n).map_err(|_| Error::Overflow("series index"))?;
    let qn = q_int(k)?;
    let one_plus = Poly::one() + Poly::monomial(1.into(), n as usize);
    let a = &one_plus * &qn;
    let b = q_int(k + 1)? * q_int(k - 1)?;
    let c = Poly::one() + qn.square().shift(1);
    QPythTriple::new(Fraction::integer(n)?, a, b, c)
}

/// `(q n1^2 + d1^2)(q n2^2 + d2^2) == (q n1 n2 + d1 d2)^2 + q (n1 d2 - d1 n2)^2`.
pub fn brahmagupta_check(n1: &Poly, d1: &Poly, n2: &Poly, d2: &Poly) -> bool {
    let norm = |n: &Poly, d: &Poly| n.square().shift(1) + d.square();
    let lhs = norm(n1, d1) * norm(n2, d2);
    let x = (n1 * n2).shift(1) + d1 * d2;
    let y = n1 * d2 - d1 * n2;
    lhs == x.square() + y.square().shift(1)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QTreeNode {
    pub node: TreeNode,
    pub q: Option<QPythTriple>,
}

/// The classical tree with every node of fraction `> 1` annotated by its q-triple.
pub fn q_pythagorean_tree(depth: usize) -> Result<Tree<QTreeNode>> {
    pythagorean_tree(depth)?.try_map(|n| {
        let q = match n.fraction.fraction() {
            Some(f) if f > Fraction::ONE => Some(q_triple(f)?),
            _ => None,
        };
        Ok(QTreeNode { node: n.clone(), q })
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct UnimodalCounterexample {
    pub base: Fraction,
    pub unimodal: PolyFlags3,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct UnimodalScan {
    pub max_m: u64,
    pub checked: usize,
    pub counterexamples: Vec<UnimodalCounterexample>,
}

/// Coprime `m > n >= 1` with `m <= max_m`, in order of `(m, n)`.
pub fn coprime_fractions(max_m: u64) -> Vec<Fraction> {
    (2..=max_m)
        .flat_map(|m| (1..m).filter_map(move |n| Fraction::new(m, n).ok()))
        .collect()
}

/// Checks unimodality of `A`, `B`, `C` for every coprime `m > n`, `m <= max_m`.
pub fn scan_unimodal(max_m: u64) -> Result<UnimodalScan> {
    let fractions = coprime_fractions(max_m);
    let reports: Vec<(Fraction, ConditionReport)> = fractions
        .par_iter()
        .map(|&f| q_triple(f).map(|t| (f, t.conditions())))
        .collect::<Result<_>>()?;
    let counterexamples = reports
        .iter()
        .filter(|(_, r)| !r.unimodal())
        .map(|&(base, r)| UnimodalCounterexample {
            base,
            unimodal: r.unimodal,
        })
        .collect();
    Ok(UnimodalScan {
        max_m,
        checked: reports.len(),
        counterexamples,
    })
}
