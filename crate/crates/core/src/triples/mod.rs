//! Classical Pythagorean triples and their symmetric-matrix encoding.

mod tree;

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qarith::{CFrac, Fraction};

pub use tree::{
    pythagorean_tree, word_string, Gen, NodeFraction, Tree, TreeNode, TreeNodeRecord, Word,
    STEM_LEVELS,
};

/// `(a, b, c)`; `b` keeps its sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ClassicalTriple {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl ClassicalTriple {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        ClassicalTriple { a, b, c }
    }

    pub fn is_pythagorean(&self) -> bool {
        let sq = |x: i128| BigInt::from(x) * BigInt::from(x);
        sq(self.a) + sq(self.b) == sq(self.c)
    }

    fn gcd3(&self) -> i128 {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    /// Positive entries, gcd 1 with `a` even, or gcd 2 with `a/2` odd.
    pub fn is_standard(&self) -> bool {
        if self.a <= 0 || self.b <= 0 || self.c <= 0 || !self.is_pythagorean() {
            return false;
        }
        match self.gcd3() {
            1 => self.a % 2 == 0,
            2 => (self.a / 2) % 2 != 0,
            _ => false,
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.is_pythagorean() && self.gcd3() == 1
    }

    /// `(a, |b|, c)`.
    pub fn displayed(&self) -> [i128; 3] {
        [self.a, self.b.abs(), self.c]
    }
}

impl fmt::Display for ClassicalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// `(2mn, m^2 - n^2, m^2 + n^2)` for coprime `m >= n >= 1`.
pub fn euclid_triple(m: u64, n: u64) -> Result<ClassicalTriple> {
    let f = Fraction::new(m, n)?;
    if !f.at_least_one() {
        return Err(Error::FractionBelowOne(f.to_string()));
    }
    let (m, n) = (i128::from(m), i128::from(n));
    let ovf = || Error::Overflow("euclid triple");
    let mm = m.checked_mul(m).ok_or_else(ovf)?;
    let nn = n * n;
    Ok(ClassicalTriple {
        a: (2 * m).checked_mul(n).ok_or_else(ovf)?,
        b: mm - nn,
        c: mm.checked_add(nn).ok_or_else(ovf)?,
    })
}

/// Integer 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct IntMat2 {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl IntMat2 {
    pub const IDENTITY: IntMat2 = IntMat2 {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const R: IntMat2 = IntMat2 {
        a: 1,
        b: 1,
        c: 0,
        d: 1,
    };
    pub const L: IntMat2 = IntMat2 {
        a: 1,
        b: 0,
        c: 1,
        d: 1,
    };

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        IntMat2 { a, b, c, d }
    }

    pub fn det(&self) -> Option<i128> {
        self.a
            .checked_mul(self.d)?
            .checked_sub(self.b.checked_mul(self.c)?)
    }

    pub fn transpose(&self) -> IntMat2 {
        IntMat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn checked_mul(&self, o: &IntMat2) -> Result<IntMat2> {
        let dot = |x: i128, y: i128, z: i128, w: i128| {
            x.checked_mul(y)
                .and_then(|p| z.checked_mul(w).and_then(|s| p.checked_add(s)))
                .ok_or(Error::Overflow("integer matrix product"))
        };
        Ok(IntMat2::new(
            dot(self.a, o.a, self.b, o.c)?,
            dot(self.a, o.b, self.b, o.d)?,
            dot(self.c, o.a, self.d, o.c)?,
            dot(self.c, o.b, self.d, o.d)?,
        ))
    }

    /// Classical `R^a1 L^a2 ... R^ak` (the closed forms `[[1,a],[0,1]]`, `[[1,0],[a,1]]`).
    pub fn from_cfrac(cf: &CFrac) -> Result<IntMat2> {
        cf.terms()
            .iter()
            .enumerate()
            .try_fold(IntMat2::IDENTITY, |acc, (i, &a)| {
                let a = i128::from(a);
                let g = if i % 2 == 0 {
                    IntMat2::new(1, a, 0, 1)
                } else {
                    IntMat2::new(1, 0, a, 1)
                };
                acc.checked_mul(&g)
            })
    }
}

impl Mul for IntMat2 {
    type Output = IntMat2;
    /// Panics on overflow; use [`IntMat2::checked_mul`] for untrusted input.
    fn mul(self, o: IntMat2) -> IntMat2 {
        self.checked_mul(&o)
            .expect("integer matrix product overflow")
    }
}

/// Symmetric rank-one matrix `[[x11, x12], [x12, x22]]` with nonnegative diagonal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SymMat2 {
    pub x11: i128,
    pub x12: i128,
    pub x22: i128,
}

impl SymMat2 {
    pub fn new(x11: i128, x12: i128, x22: i128) -> Result<Self> {
        let m = SymMat2 { x11, x12, x22 };
        let det = x11
            .checked_mul(x22)
            .and_then(|p| x12.checked_mul(x12).and_then(|s| p.checked_sub(s)))
            .ok_or(Error::Overflow("symmetric matrix determinant"))?;
        if x11 < 0 || x22 < 0 || det != 0 {
            return Err(Error::NotRankOne(m.to_string()));
        }
        Ok(m)
    }

    pub fn trace(&self) -> i128 {
        self.x11 + self.x22
    }

    /// `(p, r)` with `X = (p, r)^T (p, r)` and `p >= 0`, when the diagonal is square.
    pub fn factor(&self) -> Option<(i128, i128)> {
        let p = self.x11.sqrt();
        let r = self.x22.sqrt();
        if p * p != self.x11 || r * r != self.x22 {
            return None;
        }
        Some((p, if self.x12 < 0 { -r } else { r }))
    }

    /// The matrix as an integer matrix.
    pub fn as_int(&self) -> IntMat2 {
        IntMat2::new(self.x11, self.x12, self.x12, self.x22)
    }
}

impl fmt::Display for SymMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.x11, self.x12, self.x12, self.x22
        )
    }
}

/// `[[(c+b)/2, a/2], [a/2, (c-b)/2]]`.
pub fn triple_to_matrix(t: &ClassicalTriple) -> Result<SymMat2> {
    let ovf = || Error::Overflow("triple to matrix");
    let sum = t.c.checked_add(t.b).ok_or_else(ovf)?;
    let diff = t.c.checked_sub(t.b).ok_or_else(ovf)?;
    if sum % 2 != 0 || diff % 2 != 0 || t.a % 2 != 0 {
        return Err(Error::MatrixNotIntegral(t.to_string()));
    }
    SymMat2::new(sum / 2, t.a / 2, diff / 2)
}

/// `c = trace`, `b = x11 - x22`, `a = 2 x12`.
pub fn matrix_to_triple(x: &SymMat2) -> ClassicalTriple {
    ClassicalTriple {
        a: 2 * x.x12,
        b: x.x11 - x.x22,
        c: x.trace(),
    }
}

/// `A X A^T` for `det A = 1`.
pub fn sl2_act(a: &IntMat2, x: &SymMat2) -> Result<SymMat2> {
    let det = a.det().ok_or(Error::Overflow("determinant"))?;
    if det != 1 {
        return Err(Error::NotUnimodular(det));
    }
    let y = a.checked_mul(&x.as_int())?.checked_mul(&a.transpose())?;
    SymMat2::new(y.a, y.b, y.d)
}

/// `[[m^2, mn], [mn, n^2]]` for `m/n >= 1`.
pub fn matrix_from_fraction(f: Fraction) -> Result<SymMat2> {
    if !f.at_least_one() {
        return Err(Error::FractionBelowOne(f.to_string()));
    }
    let (m, n) = (i128::from(f.num()), i128::from(f.den()));
    let mm = m
        .checked_mul(m)
        .ok_or(Error::Overflow("matrix from fraction"))?;
    SymMat2::new(mm, m * n, n * n)
}

/// A point `p/r` of the projective rational line; `1/0` is infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    p: i128,
    r: i128,
}

impl ProjPoint {
    pub const INFINITY: ProjPoint = ProjPoint { p: 1, r: 0 };

    /// Reduces and normalizes the sign so that `r >= 0`.
    pub fn new(p: i128, r: i128) -> Result<Self> {
        if p == 0 && r == 0 {
            return Err(Error::Indeterminate);
        }
        let g = p.gcd(&r);
        let (mut p, mut r) = (p / g, r / g);
        if r < 0 || (r == 0 && p < 0) {
            p = -p;
            r = -r;
        }
        Ok(ProjPoint { p, r })
    }

    pub fn from_fraction(f: Fraction) -> Self {
        ProjPoint {
            p: i128::from(f.num()),
            r: i128::from(f.den()),
        }
    }

    pub fn parts(&self) -> (i128, i128) {
        (self.p, self.r)
    }

    pub fn is_infinity(&self) -> bool {
        self.r == 0
    }

    /// The positive fraction, if this point is one.
    pub fn to_fraction(&self) -> Option<Fraction> {
        let m = u64::try_from(self.p).ok()?;
        let n = u64::try_from(self.r).ok()?;
        Fraction::new(m, n).ok()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.r)
    }
}

/// `(a x + b) / (c x + d)`.
pub fn moebius(m: &IntMat2, x: ProjPoint) -> Result<ProjPoint> {
    let ovf = || Error::Overflow("moebius");
    let lin = |s: i128, t: i128| {
        s.checked_mul(x.p)
            .and_then(|u| t.checked_mul(x.r).and_then(|v| u.checked_add(v)))
            .ok_or_else(ovf)
    };
    ProjPoint::new(lin(m.a, m.b)?, lin(m.c, m.d)?)
}
