use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cfrac::CFrac;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: i64) -> Result<Poly> {
    if n <= 0 {
        return Err(Error::NonPositiveIndex(n));
    }
    Ok(Poly::new(vec![BigInt::one(); n as usize]))
}

fn q_int_u(n: u64) -> Poly {
    Poly::new(vec![BigInt::one(); n as usize])
}

/// 2x2 matrix over `Z[q]`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Mat2Poly {
    pub e11: Poly,
    pub e12: Poly,
    pub e21: Poly,
    pub e22: Poly,
}

impl Mat2Poly {
    pub fn new(e11: Poly, e12: Poly, e21: Poly, e22: Poly) -> Self {
        Mat2Poly { e11, e12, e21, e22 }
    }

    pub fn from_i64s(rows: [[&[i64]; 2]; 2]) -> Self {
        Mat2Poly::new(
            Poly::from_i64s(rows[0][0]),
            Poly::from_i64s(rows[0][1]),
            Poly::from_i64s(rows[1][0]),
            Poly::from_i64s(rows[1][1]),
        )
    }

    pub fn identity() -> Self {
        Mat2Poly::new(Poly::one(), Poly::zero(), Poly::zero(), Poly::one())
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Mat2Poly::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn det(&self) -> Poly {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    pub fn trace(&self) -> Poly {
        &self.e11 + &self.e22
    }

    pub fn eval(&self, x: &BigInt) -> [[BigInt; 2]; 2] {
        [
            [self.e11.eval(x), self.e12.eval(x)],
            [self.e21.eval(x), self.e22.eval(x)],
        ]
    }

    pub fn eval_one(&self) -> [[BigInt; 2]; 2] {
        self.eval(&BigInt::one())
    }

    pub fn second_column(&self) -> (&Poly, &Poly) {
        (&self.e12, &self.e22)
    }
}

impl Mul for &Mat2Poly {
    type Output = Mat2Poly;
    fn mul(self, r: &Mat2Poly) -> Mat2Poly {
        Mat2Poly::new(
            &self.e11 * &r.e11 + &self.e12 * &r.e21,
            &self.e11 * &r.e12 + &self.e12 * &r.e22,
            &self.e21 * &r.e11 + &self.e22 * &r.e21,
            &self.e21 * &r.e12 + &self.e22 * &r.e22,
        )
    }
}

impl Mul for Mat2Poly {
    type Output = Mat2Poly;
    fn mul(self, r: Mat2Poly) -> Mat2Poly {
        &self * &r
    }
}

impl fmt::Display for Mat2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e11, self.e12, self.e21, self.e22
        )
    }
}

/// `R_q = [[q, 1], [0, 1]]`.
pub fn gen_r() -> Mat2Poly {
    Mat2Poly::new(Poly::q(), Poly::one(), Poly::zero(), Poly::one())
}

/// `L_q = [[q, 0], [q, 1]]`.
pub fn gen_l() -> Mat2Poly {
    Mat2Poly::new(Poly::q(), Poly::zero(), Poly::q(), Poly::one())
}

/// `[[0, 0], [0, 1]]`, the matrix of the degenerate triple `(0, -1, 1)`.
pub fn x0_matrix() -> Mat2Poly {
    Mat2Poly::new(Poly::zero(), Poly::zero(), Poly::zero(), Poly::one())
}

/// `R_q^a = [[q^a, [a]_q], [0, 1]]`.
pub fn r_power(a: u64) -> Mat2Poly {
    if a == 0 {
        return Mat2Poly::identity();
    }
    Mat2Poly::new(
        Poly::monomial(BigInt::one(), a as usize),
        q_int_u(a),
        Poly::zero(),
        Poly::one(),
    )
}

/// `L_q^a = [[q^a, 0], [q [a]_q, 1]]`.
pub fn l_power(a: u64) -> Mat2Poly {
    if a == 0 {
        return Mat2Poly::identity();
    }
    Mat2Poly::new(
        Poly::monomial(BigInt::one(), a as usize),
        Poly::zero(),
        q_int_u(a).shift(1),
        Poly::one(),
    )
}

/// `R^a1 L^a2 R^a3 ... R^ak`.
pub fn word_matrix(cf: &CFrac) -> Mat2Poly {
    cf.terms()
        .iter()
        .enumerate()
        .fold(Mat2Poly::identity(), |acc, (i, &a)| {
            let g = if i % 2 == 0 { r_power(a) } else { l_power(a) };
            &acc * &g
        })
}

/// `L^ak R^a(k-1) ... L^a1`: the word reversed with the generators swapped.
pub fn transpose_word_matrix(cf: &CFrac) -> Mat2Poly {
    let t = cf.terms();
    t.iter()
        .enumerate()
        .rev()
        .fold(Mat2Poly::identity(), |acc, (i, &a)| {
            let g = if i % 2 == 0 { l_power(a) } else { r_power(a) };
            &acc * &g
        })
}

/// `[[a, b], [c, d]] -> [[a, c/q], [q b, d]]`.
pub fn q_transpose(m: &Mat2Poly) -> Result<Mat2Poly> {
    if !m.e21.constant_term().is_zero() {
        return Err(Error::NotQDivisible);
    }
    let c_over_q = Poly::new(m.e21.coeffs().iter().skip(1).cloned().collect());
    Ok(Mat2Poly::new(
        m.e11.clone(),
        c_over_q,
        m.e12.shift(1),
        m.e22.clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::cfrac::Fraction;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn cf(t: &[u64]) -> CFrac {
        CFrac::new(t.to_vec()).unwrap()
    }

    fn int_rows(m: &Mat2Poly) -> [[i64; 2]; 2] {
        let e = m.eval_one();
        let c = |x: &BigInt| i64::try_from(x).unwrap();
        [[c(&e[0][0]), c(&e[0][1])], [c(&e[1][0]), c(&e[1][1])]]
    }

    // Plain repeated multiplication, independent of the closed forms.
    fn word_by_repetition(t: &[u64], swap: bool) -> Mat2Poly {
        let mut acc = Mat2Poly::identity();
        for (i, &a) in t.iter().enumerate() {
            let is_r = (i % 2 == 0) != swap;
            for _ in 0..a {
                acc = &acc * &if is_r { gen_r() } else { gen_l() };
            }
        }
        acc
    }

    #[test]
    fn q_int_examples() {
        assert_eq!(q_int(3).unwrap(), p(&[1, 1, 1]));
        assert_eq!(q_int(1).unwrap(), Poly::one());
        assert_eq!(q_int(6).unwrap(), p(&[1; 6]));
        assert_eq!(q_int(0), Err(Error::NonPositiveIndex(0)));
        assert!(q_int(-2).is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(int_rows(&gen_r()), [[1, 1], [0, 1]]);
        assert_eq!(int_rows(&gen_l()), [[1, 0], [1, 1]]);
        assert_eq!(x0_matrix(), Mat2Poly::from_i64s([[&[], &[]], [&[], &[1]]]));
    }

    #[test]
    fn closed_form_powers() {
        for a in 0..8 {
            assert_eq!(r_power(a), gen_r().pow(a));
            assert_eq!(l_power(a), gen_l().pow(a));
        }
    }

    #[test]
    fn word_matrix_examples() {
        assert_eq!(
            word_matrix(&cf(&[2])),
            Mat2Poly::from_i64s([[&[0, 0, 1], &[1, 1]], [&[], &[1]]])
        );
        assert_eq!(
            word_matrix(&cf(&[1, 1, 1])),
            Mat2Poly::from_i64s([[&[0, 0, 1, 1], &[1, 1, 1]], [&[0, 0, 1], &[1, 1]]])
        );
        let m = word_matrix(&cf(&[1, 1, 3]));
        assert_eq!(m.second_column(), (&p(&[1, 1, 2, 2, 1]), &p(&[1, 1, 1, 1])));
    }

    #[test]
    fn transpose_word_examples() {
        assert_eq!(
            transpose_word_matrix(&cf(&[2])),
            Mat2Poly::from_i64s([[&[0, 0, 1], &[]], [&[0, 1, 1], &[1]]])
        );
        let c = cf(&[1, 1, 1]);
        assert_eq!(
            transpose_word_matrix(&c),
            q_transpose(&word_matrix(&c)).unwrap()
        );
        let t = transpose_word_matrix(&cf(&[1, 1, 3]));
        assert_eq!(t.e21, p(&[0, 1, 1, 2, 2, 1]));
        assert_eq!(t.e22, p(&[1, 1, 1, 1]));
    }

    #[test]
    fn q_transpose_examples() {
        assert_eq!(q_transpose(&gen_r()).unwrap(), gen_l());
        assert_eq!(q_transpose(&gen_l()).unwrap(), gen_r());
        let w = word_matrix(&cf(&[2, 3, 1]));
        assert_eq!(q_transpose(&q_transpose(&w).unwrap()).unwrap(), w);
        let bad = Mat2Poly::from_i64s([[&[1], &[]], [&[1], &[1]]]);
        assert_eq!(q_transpose(&bad), Err(Error::NotQDivisible));
    }

    fn odd_cf() -> impl Strategy<Value = Vec<u64>> {
        (0usize..3).prop_flat_map(|h| proptest::collection::vec(1u64..5, 2 * h + 1))
    }

    proptest! {
        #[test]
        fn closed_forms_match_repetition(t in odd_cf()) {
            let c = cf(&t);
            prop_assert_eq!(word_matrix(&c), word_by_repetition(&t, false));
            let rev: Vec<u64> = t.iter().rev().copied().collect();
            prop_assert_eq!(transpose_word_matrix(&c), word_by_repetition(&rev, true));
        }

        #[test]
        fn transpose_paths_agree(t in odd_cf()) {
            let c = cf(&t);
            prop_assert_eq!(q_transpose(&word_matrix(&c)).unwrap(), transpose_word_matrix(&c));
        }

        #[test]
        fn transpose_is_anti_homomorphism(s in odd_cf(), t in odd_cf()) {
            let a = word_matrix(&cf(&s));
            let b = transpose_word_matrix(&cf(&t));
            let lhs = q_transpose(&(&a * &b)).unwrap();
            let rhs = &q_transpose(&b).unwrap() * &q_transpose(&a).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn q_one_gives_classical_matrix(t in odd_cf()) {
            let c = cf(&t);
            let w = word_matrix(&c);
            // classical [[1,a],[0,1]] and [[1,0],[a,1]] product
            let mut m = [[1i64, 0], [0, 1]];
            for (i, &a) in t.iter().enumerate() {
                let g = if i % 2 == 0 { [[1, a as i64], [0, 1]] } else { [[1, 0], [a as i64, 1]] };
                m = [
                    [m[0][0] * g[0][0] + m[0][1] * g[1][0], m[0][0] * g[0][1] + m[0][1] * g[1][1]],
                    [m[1][0] * g[0][0] + m[1][1] * g[1][0], m[1][0] * g[0][1] + m[1][1] * g[1][1]],
                ];
            }
            prop_assert_eq!(int_rows(&w), m);
            let f: Fraction = c.to_fraction().unwrap();
            prop_assert_eq!((m[0][1] as u64, m[1][1] as u64), (f.num(), f.den()));
        }
    }
}
