//! Exact polynomial arithmetic: integer-coefficient polynomials, unreduced
//! ratios, and power series truncated by total degree.

mod monomial;
mod parse;
mod polynomial;
mod rational;
mod series;

pub use monomial::{Monomial, Var};
pub use polynomial::Poly;
pub use rational::{rationalfn_eq, RationalFn};
pub use series::{series_div, series_invert, series_mul, TruncatedSeries};

/// Free-function forms used by the CLI and tests.
pub fn poly_add(p: &Poly, q: &Poly) -> Poly {
    p + q
}

pub fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    p * q
}
