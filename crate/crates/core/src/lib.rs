//! q-deformed rationals and q-deformed Pythagorean triples.

pub mod error;
pub mod poly;
pub mod qarith;
pub mod qtriples;
pub mod search;
pub mod triples;

pub use error::{Error, Result};
pub use poly::Poly;
