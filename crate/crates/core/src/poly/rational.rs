use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::{series_div, Poly, TruncatedSeries};
use crate::error::{Error, Result};

/// An unreduced ratio of polynomials.
///
/// No common factors are ever cancelled; two ratios are equal when their
/// cross products agree.
#[derive(Clone)]
pub struct RationalFn {
    numer: Poly,
    denom: Poly,
}

impl RationalFn {
    /// Fails with [`Error::DivisionByZero`] when the denominator is zero.
    pub fn new(numer: Poly, denom: Poly) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFn { numer, denom })
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFn {
            numer: p,
            denom: Poly::one(),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.numer
    }

    pub fn denom(&self) -> &Poly {
        &self.denom
    }

    /// Equality by cross-multiplication.
    pub fn equals(&self, other: &RationalFn) -> bool {
        &self.numer * &other.denom == &other.numer * &self.denom
    }

    /// Taylor expansion, defined when the denominator has constant term 1.
    pub fn series(&self, bound: u32) -> Result<TruncatedSeries> {
        series_div(&self.numer, &self.denom, bound)
    }

    pub fn specialize(&self, assignment: &HashMap<String, BigRational>) -> Result<BigRational> {
        let d = self.denom.specialize(assignment)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.numer.specialize(assignment)? / d)
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn {
            numer: &self.numer * &other.numer,
            denom: &self.denom * &other.denom,
        }
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        RationalFn {
            numer: &(&self.numer * &other.denom) + &(&other.numer * &self.denom),
            denom: &self.denom * &other.denom,
        }
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            numer: -&self.numer,
            denom: self.denom.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

/// Free-function form of [`RationalFn::equals`].
pub fn rationalfn_eq(a: &RationalFn, b: &RationalFn) -> bool {
    a.equals(b)
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numer, self.denom)
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
