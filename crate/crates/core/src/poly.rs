//! Dense univariate polynomials in `q` with unbounded integer coefficients.
//!
//! Coefficients are stored in ascending order: `coeffs[i]` is the coefficient
//! of `q^i`. Trailing zeros are never stored, so the zero polynomial is the
//! empty vector and has no degree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest exponent accepted by the text parser.
pub const MAX_PARSE_DEGREE: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn square(&self) -> Poly {
        self * self
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `q^deg(p) * p(1/q)`: the coefficient sequence reversed.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Poly::new(self.coeffs.iter().rev().cloned().collect()))
    }

    /// `q^d * p(1/q)` for a formal degree `d >= deg(p)`.
    pub fn invert_variable_scaled(&self, d: usize) -> Result<Poly> {
        match self.degree() {
            None => Ok(Poly::zero()),
            Some(deg) if deg > d => Err(Error::DegreeWindow {
                formal: d,
                degree: deg,
            }),
            Some(deg) => Ok(self.reciprocal()?.shift(d - deg)),
        }
    }

    pub fn is_palindromic(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().eq(self.coeffs.iter().rev()))
    }

    /// Constant and leading coefficient both equal to one.
    pub fn is_monic_both_ends(&self) -> bool {
        match (self.coeffs.first(), self.coeffs.last()) {
            (Some(lo), Some(hi)) => lo.is_one() && hi.is_one(),
            _ => false,
        }
    }

    /// Every coefficient from `q^0` up to the degree is at least one.
    pub fn has_positive_coeffs(&self) -> bool {
        !self.is_zero() && self.coeffs.iter().all(Signed::is_positive)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Non-decreasing up to a peak, then non-increasing.
    pub fn is_unimodal(&self) -> bool {
        let c = &self.coeffs;
        let mut i = 0;
        while i + 1 < c.len() && c[i] <= c[i + 1] {
            i += 1;
        }
        while i + 1 < c.len() && c[i] >= c[i + 1] {
            i += 1;
        }
        i + 1 >= c.len()
    }

    /// Quotient of an exact division over the integers.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead = d.leading_coeff().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let Some(pd) = self.degree() else {
            return Ok(Poly::zero());
        };
        if pd < dd {
            return Err(Error::NotDivisible {
                remainder: self.clone(),
            });
        }
        let mut quot = vec![BigInt::zero(); pd - dd + 1];
        for k in (0..=pd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible {
                    remainder: Poly::new(rem),
                });
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] -= &qk * dc;
            }
            quot[k] = qk;
        }
        let rem = Poly::new(rem);
        if rem.is_zero() {
            Ok(Poly::new(quot))
        } else {
            Err(Error::NotDivisible { remainder: rem })
        }
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Lexicographic comparison of the ascending coefficient sequences.
    pub fn lex_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs.cmp(&other.coeffs)
    }

    /// Parses `"[1, 2, 1]"` or `"1,2,1"` as ascending coefficients.
    pub fn from_coeff_list(s: &str) -> Result<Poly> {
        let t = s.trim();
        let t = match (t.strip_prefix('['), t.ends_with(']')) {
            (Some(rest), true) => &rest[..rest.len() - 1],
            (None, false) => t,
            _ => return Err(Error::Parse(format!("unbalanced brackets in {s:?}"))),
        };
        if t.trim().is_empty() {
            return Ok(Poly::zero());
        }
        t.split(',')
            .map(|item| {
                let item = item.trim().trim_matches('"');
                item.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {item:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
    }
}

impl From<Vec<BigInt>> for Poly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        Poly::new(coeffs)
    }
}

impl From<&[i64]> for Poly {
    fn from(coeffs: &[i64]) -> Self {
        Poly::from_i64s(coeffs)
    }
}

impl<const N: usize> From<[i64; N]> for Poly {
    fn from(coeffs: [i64; N]) -> Self {
        Poly::from_i64s(&coeffs)
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], negate_b: bool) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i).cloned().unwrap_or_default();
        out.push(if negate_b { x - y } else { x + y });
    }
    Poly::new(out)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        add_coeffs(&self.coeffs, &rhs.coeffs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for Poly {
    /// Ascending terms, e.g. `1 + 2*q + q^2 - 3*q^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if k == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> TermParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let src = self.src;
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&src[start..self.pos]).unwrap())
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    /// One unsigned term: `c`, `q`, `q^e`, `c*q`, `cq^e`, ...
    fn term(&mut self) -> Result<(BigInt, usize)> {
        self.skip_ws();
        let coeff = match self.digits() {
            Some(d) => Some(d.parse::<BigInt>().map_err(|_| self.err("bad integer"))?),
            None => None,
        };
        self.skip_ws();
        let mut has_var = false;
        if coeff.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
            if self.peek() != Some(b'q') {
                return Err(self.err("expected q after '*'"));
            }
        }
        let mut exp = 0usize;
        if self.peek() == Some(b'q') {
            self.pos += 1;
            has_var = true;
            exp = 1;
            self.skip_ws();
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                let d = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                exp = d
                    .parse::<usize>()
                    .ok()
                    .filter(|&e| e <= MAX_PARSE_DEGREE)
                    .ok_or_else(|| self.err("exponent out of range"))?;
            }
        }
        match (coeff, has_var) {
            (None, false) => Err(self.err("expected a term")),
            (c, _) => Ok((c.unwrap_or_else(BigInt::one), exp)),
        }
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Accepts the canonical rendering and minor variants (`3q^2`, repeated
    /// exponents, a leading sign).
    fn from_str(s: &str) -> Result<Poly> {
        let mut p = TermParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut coeffs: Vec<BigInt> = Vec::new();
        p.skip_ws();
        let mut negative = match p.peek() {
            Some(b'-') => {
                p.pos += 1;
                true
            }
            Some(b'+') => {
                p.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (c, e) = p.term()?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            if negative {
                coeffs[e] -= c;
            } else {
                coeffs[e] += c;
            }
            p.skip_ws();
            match p.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(p.err("unexpected character")),
            }
            p.pos += 1;
        }
        Ok(Poly::new(coeffs))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| serde::de::Error::custom(format!("bad coefficient {s:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Poly::new)
    }
}
