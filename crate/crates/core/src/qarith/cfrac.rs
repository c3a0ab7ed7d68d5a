use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A positive rational `m/n` in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fraction {
    m: u64,
    n: u64,
}

impl Fraction {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidFraction(format!(
                "{m}/{n}: both parts must be positive"
            )));
        }
        if m.gcd(&n) != 1 {
            return Err(Error::InvalidFraction(format!(
                "{m}/{n} is not in lowest terms"
            )));
        }
        Ok(Fraction { m, n })
    }

    pub fn integer(m: u64) -> Result<Self> {
        Self::new(m, 1)
    }

    pub const ONE: Fraction = Fraction { m: 1, n: 1 };

    pub fn num(&self) -> u64 {
        self.m
    }

    pub fn den(&self) -> u64 {
        self.n
    }

    pub fn inverse(&self) -> Fraction {
        Fraction {
            m: self.n,
            n: self.m,
        }
    }

    pub fn is_one(&self) -> bool {
        self.m == 1 && self.n == 1
    }

    /// `m >= n`.
    pub fn at_least_one(&self) -> bool {
        self.m >= self.n
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.m) * u128::from(other.n)).cmp(&(u128::from(other.m) * u128::from(self.n)))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

fn parse_u64(s: &str, whole: &str) -> Result<u64> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidFraction(format!("cannot parse {whole:?}")));
    }
    s.parse::<u64>()
        .map_err(|_| Error::InvalidFraction(format!("{whole:?} is out of range")))
}

impl FromStr for Fraction {
    type Err = Error;

    /// `"m/n"`, or a bare `"m"` meaning `m/1`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((m, n)) => Fraction::new(parse_u64(m, s)?, parse_u64(n, s)?),
            None => Fraction::new(parse_u64(s, s)?, 1),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Continued fraction `[a1, ..., ak]` with every term positive and `k` odd.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CFrac {
    terms: Vec<u64>,
}

impl CFrac {
    pub fn new(terms: Vec<u64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidContinuedFraction("no terms".into()));
        }
        if terms.contains(&0) {
            return Err(Error::InvalidContinuedFraction("terms must be >= 1".into()));
        }
        if terms.len().is_multiple_of(2) {
            return Err(Error::InvalidContinuedFraction(format!(
                "even length {} (odd length required)",
                terms.len()
            )));
        }
        Ok(CFrac { terms })
    }

    /// Odd-length expansion of a fraction `>= 1`.
    pub fn expand(f: Fraction) -> Result<Self> {
        if !f.at_least_one() {
            return Err(Error::FractionBelowOne(f.to_string()));
        }
        let (mut m, mut n) = (f.num(), f.den());
        let mut terms = Vec::new();
        while n != 0 {
            terms.push(m / n);
            (m, n) = (n, m % n);
        }
        if terms.len() % 2 == 0 {
            // [.., a] = [.., a - 1, 1] and [.., b, 1] = [.., b + 1]
            let last = *terms.last().expect("nonempty");
            if last >= 2 {
                *terms.last_mut().unwrap() -= 1;
                terms.push(1);
            } else {
                terms.pop();
                *terms.last_mut().expect("length >= 2") += 1;
            }
        }
        CFrac::new(terms)
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn to_fraction(&self) -> Result<Fraction> {
        cf_to_fraction(&self.terms)
    }
}

/// Evaluates `a1 + 1/(a2 + 1/(... + 1/ak))` for any nonempty positive terms.
pub fn cf_to_fraction(terms: &[u64]) -> Result<Fraction> {
    let (&last, rest) = terms
        .split_last()
        .ok_or_else(|| Error::InvalidContinuedFraction("no terms".into()))?;
    if terms.contains(&0) {
        return Err(Error::InvalidContinuedFraction("terms must be >= 1".into()));
    }
    let (mut p, mut r) = (last, 1u64);
    for &a in rest.iter().rev() {
        let next = a
            .checked_mul(p)
            .and_then(|x| x.checked_add(r))
            .ok_or(Error::Overflow("continued fraction evaluation"))?;
        (p, r) = (next, p);
    }
    Fraction::new(p, r)
}

/// Parses `"[1,2,3]"` (brackets optional) without the odd-length check.
pub fn parse_terms(s: &str) -> Result<Vec<u64>> {
    let t = s.trim();
    let inner = match (t.strip_prefix('['), t.strip_suffix(']')) {
        (Some(_), Some(_)) => &t[1..t.len() - 1],
        (None, None) => t,
        _ => return Err(Error::Parse(format!("unbalanced brackets in {s:?}"))),
    };
    inner
        .split(',')
        .map(|x| {
            let x = x.trim();
            if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad term {x:?}")));
            }
            x.parse::<u64>()
                .map_err(|_| Error::Parse(format!("term {x:?} out of range")))
        })
        .collect()
}

impl FromStr for CFrac {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CFrac::new(parse_terms(s)?)
    }
}

impl fmt::Display for CFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fr(m: u64, n: u64) -> Fraction {
        Fraction::new(m, n).unwrap()
    }

    /// Direct evaluation with exact rational arithmetic, one level at a time.
    fn eval_naive(terms: &[u64]) -> (u128, u128) {
        let mut num: u128 = *terms.last().unwrap() as u128;
        let mut den: u128 = 1;
        for &a in terms[..terms.len() - 1].iter().rev() {
            // a + 1/(num/den) = (a*num + den)/num
            let nn = a as u128 * num + den;
            den = num;
            num = nn;
        }
        let g = num.gcd(&den);
        (num / g, den / g)
    }

    #[test]
    fn fraction_validation() {
        assert!(Fraction::new(0, 1).is_err());
        assert!(Fraction::new(1, 0).is_err());
        assert!(Fraction::new(4, 2).is_err());
        assert_eq!(fr(3, 2).inverse(), fr(2, 3));
        assert!(fr(3, 2) > fr(4, 3));
        assert!(fr(1, 2) < Fraction::ONE);
    }

    #[test]
    fn fraction_parse_and_print() {
        assert_eq!("5/2".parse::<Fraction>().unwrap(), fr(5, 2));
        assert_eq!(" 7 ".parse::<Fraction>().unwrap(), fr(7, 1));
        assert_eq!(fr(7, 1).to_string(), "7/1");
        for bad in [
            "",
            "/",
            "1/",
            "/2",
            "3/0",
            "0",
            "-1/2",
            "4/6",
            "1/2/3",
            "+1",
            "99999999999999999999",
        ] {
            assert!(bad.parse::<Fraction>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn expand_examples() {
        assert_eq!(CFrac::expand(fr(2, 1)).unwrap().terms(), &[2]);
        assert_eq!(CFrac::expand(fr(3, 2)).unwrap().terms(), &[1, 1, 1]);
        assert_eq!(CFrac::expand(fr(7, 4)).unwrap().terms(), &[1, 1, 3]);
        assert_eq!(CFrac::expand(Fraction::ONE).unwrap().terms(), &[1]);
        // 5/2 = [2,2] -> [2,1,1]; 4/3 = [1,3] -> [1,2,1]
        assert_eq!(CFrac::expand(fr(5, 2)).unwrap().terms(), &[2, 1, 1]);
        assert_eq!(CFrac::expand(fr(4, 3)).unwrap().terms(), &[1, 2, 1]);
        assert!(matches!(
            CFrac::expand(fr(2, 3)),
            Err(Error::FractionBelowOne(_))
        ));
    }

    #[test]
    fn to_fraction_examples() {
        assert_eq!(cf_to_fraction(&[2]).unwrap(), fr(2, 1));
        assert_eq!(cf_to_fraction(&[1, 1, 1]).unwrap(), fr(3, 2));
        assert_eq!(cf_to_fraction(&[1, 1, 3]).unwrap(), fr(7, 4));
        assert_eq!(cf_to_fraction(&[1, 2]).unwrap(), fr(3, 2));
        assert_eq!(eval_naive(&[1, 1, 3]), (7, 4));
        assert!(cf_to_fraction(&[]).is_err());
        assert!(cf_to_fraction(&[1, 0]).is_err());
        assert!(cf_to_fraction(&[u64::MAX, u64::MAX]).is_err());
    }

    #[test]
    fn cfrac_validation_and_text() {
        assert!(CFrac::new(vec![1, 2]).is_err());
        assert!(CFrac::new(vec![]).is_err());
        assert!(CFrac::new(vec![1, 0, 1]).is_err());
        let c: CFrac = "[1, 1, 3]".parse().unwrap();
        assert_eq!(c.to_string(), "[1,1,3]");
        assert!("[1,2]".parse::<CFrac>().is_err());
        assert_eq!(parse_terms("1,2").unwrap(), vec![1, 2]);
        assert!(parse_terms("[1,2").is_err());
        assert!(parse_terms("[]").is_err());
    }

    proptest! {
        #[test]
        fn expand_round_trip(m in 1u64..5000, n in 1u64..5000) {
            prop_assume!(m >= n && m.gcd(&n) == 1);
            let f = fr(m, n);
            let cf = CFrac::expand(f).unwrap();
            prop_assert!(cf.terms().len() % 2 == 1);
            prop_assert!(cf.terms().iter().all(|&a| a >= 1));
            prop_assert_eq!(cf.to_fraction().unwrap(), f);
            prop_assert_eq!(eval_naive(cf.terms()), (m as u128, n as u128));
        }

        #[test]
        fn fraction_text_round_trip(m in 1u64..u64::MAX, n in 1u64..1000) {
            prop_assume!(m.gcd(&n) == 1);
            let f = fr(m, n);
            prop_assert_eq!(f.to_string().parse::<Fraction>().unwrap(), f);
        }
    }
}
