use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::cfrac::{CFrac, Fraction};
use super::matrix::word_matrix;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// The q-deformation `num / den` of the rational `base`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "QRationalRecord")]
pub struct QRational {
    base: Fraction,
    num: Poly,
    den: Poly,
}

#[derive(Deserialize)]
struct QRationalRecord {
    base: Fraction,
    num: Poly,
    den: Poly,
}

impl TryFrom<QRationalRecord> for QRational {
    type Error = Error;
    fn try_from(r: QRationalRecord) -> Result<Self> {
        QRational::new(r.base, r.num, r.den)
    }
}

impl QRational {
    /// Checks the value at `q = 1`, coefficient signs, and for bases above one
    /// the leading coefficients and the degree gap.
    pub fn new(base: Fraction, num: Poly, den: Poly) -> Result<Self> {
        let bad = |why: &str| {
            Err(Error::InvalidFraction(format!(
                "q-rational for {base}: {why}"
            )))
        };
        if den.is_zero() || num.is_zero() {
            return bad("zero numerator or denominator");
        }
        if !num.has_nonnegative_coeffs() || !den.has_nonnegative_coeffs() {
            return bad("negative coefficient");
        }
        let (n1, d1) = (num.eval_one(), den.eval_one());
        if n1.clone() * BigInt::from(base.den()) != d1 * BigInt::from(base.num()) {
            return bad("value at q = 1 does not match");
        }
        if base > Fraction::ONE {
            let monic = num.leading_coeff().is_some_and(One::is_one)
                && den.leading_coeff().is_some_and(One::is_one);
            if !monic || num.degree() <= den.degree() {
                return bad("expected monic parts with deg num > deg den");
            }
        }
        Ok(QRational { base, num, den })
    }

    pub fn base(&self) -> Fraction {
        self.base
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    /// Equality as rational functions of `q`.
    pub fn same_value(&self, other: &QRational) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_q = ({}) / ({})", self.base, self.num, self.den)
    }
}

/// `[m/n]_q` for `m/n >= 1`, read off the second column of the word matrix.
pub fn q_rational(f: Fraction) -> Result<QRational> {
    let cf = CFrac::expand(f)?;
    let w = word_matrix(&cf);
    QRational::new(f, w.e12, w.e22)
}

/// Any positive fraction; values below one go through inversion.
pub fn q_rational_any(f: Fraction) -> Result<QRational> {
    if f.at_least_one() {
        q_rational(f)
    } else {
        q_rational_inverse(&q_rational(f.inverse())?)
    }
}

/// `[n/m]_q` from `[m/n]_q` by reversing both parts within the common degree.
pub fn q_rational_inverse(r: &QRational) -> Result<QRational> {
    let d = r.num.degree().max(r.den.degree()).unwrap_or(0);
    let num = r.den.invert_variable_scaled(d)?;
    let den = r.num.invert_variable_scaled(d)?;
    QRational::new(r.base.inverse(), num, den)
}

/// `[x + 1]_q = q [x]_q + 1`.
pub fn q_rational_plus_one(r: &QRational) -> Result<QRational> {
    let m = r
        .base
        .num()
        .checked_add(r.base.den())
        .ok_or(Error::Overflow("fraction plus one"))?;
    let base = Fraction::new(m, r.base.den())?;
    QRational::new(base, r.num.shift(1) + &r.den, r.den.clone())
}

/// The inversion formula `((q-1) x + 1) / (q x + 1 - q)` applied to `x = num/den`,
/// reduced by the common power of `q` and the common content.
pub fn perrine_inverse(r: &QRational) -> Result<QRational> {
    let q_minus_1 = Poly::from_i64s(&[-1, 1]);
    let one_minus_q = Poly::from_i64s(&[1, -1]);
    let num = &q_minus_1 * &r.num + &r.den;
    let den = r.num.shift(1) + &one_minus_q * &r.den;
    let (num, den) = reduce_pair(num, den)?;
    QRational::new(r.base.inverse(), num, den)
}

fn reduce_pair(num: Poly, den: Poly) -> Result<(Poly, Poly)> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok((num, Poly::one()));
    }
    let v = num.valuation().min(den.valuation()).unwrap_or(0);
    let drop_low = |p: &Poly| Poly::new(p.coeffs()[v..].to_vec());
    let (num, den) = (drop_low(&num), drop_low(&den));
    let mut g = num.content().gcd(&den.content());
    if den.leading_coeff().is_some_and(Signed::is_negative) {
        g = -g;
    }
    if g.is_one() {
        return Ok((num, den));
    }
    let div = |p: &Poly| Poly::new(p.coeffs().iter().map(|c| c / &g).collect());
    Ok((div(&num), div(&den)))
}

/// Builds `[f]_q` using only `[x+1] = q[x] + 1` and inversion, walking the
/// continued fraction from the last term.
pub fn q_rational_by_recurrence(f: Fraction) -> Result<QRational> {
    if !f.at_least_one() {
        return Err(Error::FractionBelowOne(f.to_string()));
    }
    let cf = CFrac::expand(f)?;
    let terms = cf.terms();
    let unit = QRational::new(Fraction::ONE, Poly::one(), Poly::one())?;
    let mut acc: Option<QRational> = None;
    for &a in terms.iter().rev() {
        let mut x = match &acc {
            None => {
                let mut x = unit.clone();
                for _ in 1..a {
                    x = q_rational_plus_one(&x)?;
                }
                acc = Some(x);
                continue;
            }
            Some(y) => q_rational_inverse(y)?,
        };
        for _ in 0..a {
            x = q_rational_plus_one(&x)?;
        }
        acc = Some(x);
    }
    Ok(acc.expect("nonempty expansion"))
}

/// `N1 D2 - D1 N2` for `base(r1) > base(r2)`.
pub fn total_positivity_poly(r1: &QRational, r2: &QRational) -> Result<Poly> {
    if r1.base <= r2.base {
        return Err(Error::NotOrdered(r1.base.to_string(), r2.base.to_string()));
    }
    Ok(&r1.num * &r2.den - &r1.den * &r2.num)
}
