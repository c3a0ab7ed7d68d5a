//! Continued fractions, the generators `R_q`, `L_q`, and q-rationals.

mod cfrac;
mod matrix;
mod qrational;

pub use cfrac::{cf_to_fraction, parse_terms, CFrac, Fraction};
pub use matrix::{
    gen_l, gen_r, l_power, q_int, q_transpose, r_power, transpose_word_matrix, word_matrix,
    x0_matrix, Mat2Poly,
};
pub use qrational::{
    perrine_inverse, q_rational, q_rational_any, q_rational_by_recurrence, q_rational_inverse,
    q_rational_plus_one, total_positivity_poly, QRational,
};

/// Odd-length continued fraction of `f >= 1`.
pub fn cf_expand(f: Fraction) -> crate::Result<CFrac> {
    CFrac::expand(f)
}
