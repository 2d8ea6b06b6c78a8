use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};

/// Edge weight: a rational constant times a monomial in formal variables.
///
/// Plain variable names and rational literals are the common cases; products
/// such as `2*x1` or `u*w` arise from the network transformations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weight {
    coeff: BigRational,
    monomial: Monomial,
}

impl Weight {
    pub fn var(name: &str) -> Self {
        Weight {
            coeff: BigRational::one(),
            monomial: Monomial::var(name),
        }
    }

    pub fn one() -> Self {
        Weight::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Weight {
            coeff: c,
            monomial: Monomial::one(),
        }
    }

    pub fn new(coeff: BigRational, monomial: Monomial) -> Self {
        Weight { coeff, monomial }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn monomial(&self) -> &Monomial {
        &self.monomial
    }

    pub fn degree(&self) -> u32 {
        self.monomial.degree()
    }

    pub fn mul(&self, other: &Weight) -> Weight {
        Weight {
            coeff: &self.coeff * &other.coeff,
            monomial: self.monomial.mul(&other.monomial),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Weight {
        Weight {
            coeff: &self.coeff * c,
            monomial: self.monomial.clone(),
        }
    }

    /// Integer coefficient, when the constant is integral.
    pub fn int_coeff(&self) -> Option<BigInt> {
        self.coeff.is_integer().then(|| self.coeff.to_integer())
    }

    /// The weight as a polynomial; `edge` names the edge in the error.
    pub fn to_poly(&self, edge: &str) -> Result<Poly> {
        let c = self
            .int_coeff()
            .ok_or_else(|| Error::NonIntegralWeight(edge.to_owned()))?;
        Ok(Poly::term(c, self.monomial.clone()))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.monomial;
        if m.is_one() {
            return write!(f, "{}", self.coeff);
        }
        if self.coeff.is_one() {
            write!(f, "{m}")
        } else if self.coeff == -BigRational::one() {
            write!(f, "-{m}")
        } else {
            write!(f, "{}*{m}", self.coeff)
        }
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_') && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Accepts `*`-separated factors, each a variable (optionally `^e`) or an
/// integer or `p/q` literal.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weight> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let mut coeff = BigRational::one();
        let mut factors: Vec<(String, u32)> = Vec::new();
        for raw in body.split('*') {
            let factor = raw.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in weight {s:?}")));
            }
            if factor.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= parse_rational(factor)?;
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                ),
                None => (factor, 1),
            };
            if !is_ident(name) {
                return Err(Error::Parse(format!("bad variable name {name:?}")));
            }
            factors.push((name.to_owned(), exp));
        }
        if neg {
            coeff = -coeff;
        }
        Ok(Weight {
            coeff,
            monomial: Monomial::from_factors(factors),
        })
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational literal {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!("a1".parse::<Weight>().unwrap(), Weight::var("a1"));
        let half: Weight = "1/2".parse().unwrap();
        assert_eq!(half.coeff(), &BigRational::new(1.into(), 2.into()));
        assert!(half.monomial().is_one());
        let glued: Weight = "u*w".parse().unwrap();
        assert_eq!(glued.degree(), 2);
        let doubled: Weight = "2*x1".parse().unwrap();
        assert_eq!(doubled.to_string(), "2*x1");
        assert_eq!("3/2*x^2".parse::<Weight>().unwrap().to_string(), "3/2*x^2");
    }

    #[test]
    fn round_trip_display() {
        for s in ["x", "1", "7/3", "2*x1", "u*w", "2*a*b^3", "-x"] {
            let w: Weight = s.parse().unwrap();
            assert_eq!(w.to_string().parse::<Weight>().unwrap(), w);
        }
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "x**y", "1/0", "x^", "9x", "a-b"] {
            assert!(s.parse::<Weight>().is_err(), "{s}");
        }
    }

    #[test]
    fn non_integral_weight_has_no_poly() {
        let w: Weight = "1/2*x".parse().unwrap();
        assert!(matches!(w.to_poly("e"), Err(Error::NonIntegralWeight(_))));
        assert_eq!(
            "3*x".parse::<Weight>().unwrap().to_poly("e").unwrap().to_string(),
            "3*x"
        );
    }
}
