use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Monomial;
use crate::error::{Error, Result};

/// Multivariate polynomial with arbitrary-precision integer coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by [`Monomial`], so iteration order
/// is the canonical printing order and no zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn var(name: &str) -> Self {
        Poly::term(1, Monomial::var(name))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BigInt, Monomial)>) -> Self {
        let mut p = Poly::zero();
        for (c, m) in terms {
            p.add_term(c, m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn add_term(&mut self, c: BigInt, m: Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &BigInt, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // Monomial multiplication is injective: no terms merge.
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Drops every term of total degree greater than `bound`.
    pub fn truncate(&self, bound: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product with every term of degree above `bound` discarded.
    pub fn mul_truncated(&self, other: &Poly, bound: u32) -> Poly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > bound {
                break;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() > bound {
                    break;
                }
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Every variable occurring in the polynomial, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = self.terms.keys().flat_map(|m| m.vars().map(str::to_owned)).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Exact value under a variable assignment.
    pub fn specialize(&self, assignment: &HashMap<String, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut value = BigRational::from_integer(c.clone());
            for (v, e) in m.factors() {
                let x = assignment.get(v).ok_or_else(|| Error::UnboundVariable(v.to_owned()))?;
                value *= num_traits::pow(x.clone(), e as usize);
            }
            total += value;
        }
        Ok(total)
    }

    /// Coefficients reduced into {0, 1}.
    pub fn mod2(&self) -> Poly {
        let two = BigInt::from(2);
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !(*c % &two).is_zero())
                .map(|(m, _)| (m.clone(), BigInt::one()))
                .collect(),
        }
    }

    /// True iff every coefficient is positive.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(c.clone(), m.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(-c, m.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Poly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        let mut out = Poly::zero();
        for p in iter {
            for (m, c) in p.terms {
                out.add_term(c, m);
            }
        }
        out
    }
}

impl From<Monomial> for Poly {
    fn from(m: Monomial) -> Poly {
        Poly::term(1, m)
    }
}

/// `coeff*var1^e1*var2^e2` terms joined by ` + ` / ` - `, coefficient omitted
/// when it is one.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
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

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn additive_identity_and_inverse() {
        let z = p("z1*z2*z3*z4");
        assert_eq!(&(&Poly::one() + &z) + &Poly::zero(), &Poly::one() + &z);
        assert!((&z + &(-&z)).is_zero());
        assert_eq!((&z - &z).to_string(), "0");
    }

    #[test]
    fn fig1_conservative_factorization_expands_to_ten_terms() {
        let (w, y, z, t) = (
            p("w1*w2*w3*w4"),
            p("y1*y2*y3*y4"),
            p("z1*z2*z3*z4"),
            p("f*y2*y3*y4*g*w4*w1*w2"),
        );
        let one = Poly::one();
        let inner = &(&(&one + &w) * &(&one + &y)) + &t;
        assert_eq!(
            inner,
            p("1 + w1*w2*w3*w4 + y1*y2*y3*y4 + w1*w2*w3*w4*y1*y2*y3*y4 + f*y2*y3*y4*g*w4*w1*w2")
        );
        let full = &(&one + &z) * &inner;
        assert_eq!(full.len(), 10);
        let listed = [
            one.clone(),
            w.clone(),
            y.clone(),
            z.clone(),
            t.clone(),
            &w * &z,
            &w * &y,
            &y * &z,
            &(&w * &y) * &z,
            &z * &t,
        ];
        assert_eq!(full, listed.into_iter().sum());
    }

    #[test]
    fn multiplicative_identity_and_absorption() {
        let x = p("1 + z1*z2*z3*z4");
        assert_eq!(&x * &Poly::one(), x);
        assert!((&p("a1 + a2") * &Poly::zero()).is_zero());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("y*x + 2*x^2 - 3 + x").to_string(), "-3 + x + 2*x^2 + x*y");
        assert_eq!(p("-a").to_string(), "-a");
    }

    #[test]
    fn specialize_examples() {
        let mut a = HashMap::new();
        for v in ["c", "d", "e", "f"] {
            a.insert(v.to_string(), BigRational::one());
        }
        assert_eq!(
            p("1 + c*d*e*f").specialize(&a).unwrap(),
            BigRational::from_integer(2.into())
        );

        let mut b = HashMap::new();
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        b.insert("z1".into(), r(1, 2));
        b.insert("z2".into(), r(2, 1));
        b.insert("z3".into(), r(3, 1));
        b.insert("z4".into(), r(1, 3));
        assert_eq!(p("1 + z1*z2*z3*z4").specialize(&b).unwrap(), r(2, 1));

        b.remove("z3");
        match p("z1*z3").specialize(&b) {
            Err(Error::UnboundVariable(v)) => assert_eq!(v, "z3"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mod2_keeps_odd_coefficients() {
        assert_eq!(p("3*x + 2*y - z").mod2(), p("x + z"));
    }
}
