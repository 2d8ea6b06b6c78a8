use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::Poly;
use crate::error::{Error, Result};

/// A formal power series known up to total degree `bound` inclusive.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    poly: Poly,
    bound: u32,
}

impl TruncatedSeries {
    pub fn new(poly: &Poly, bound: u32) -> Self {
        TruncatedSeries {
            poly: poly.truncate(bound),
            bound,
        }
    }

    pub fn zero(bound: u32) -> Self {
        TruncatedSeries {
            poly: Poly::zero(),
            bound,
        }
    }

    pub fn one(bound: u32) -> Self {
        TruncatedSeries {
            poly: Poly::one(),
            bound,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let bound = self.bound.min(other.bound);
        TruncatedSeries {
            poly: (&self.poly + &other.poly).truncate(bound),
            bound,
        }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let bound = self.bound.min(other.bound);
        TruncatedSeries {
            poly: (&self.poly - &other.poly).truncate(bound),
            bound,
        }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            poly: -&self.poly,
            bound: self.bound,
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let bound = self.bound.min(other.bound);
        TruncatedSeries {
            poly: self.poly.mul_truncated(&other.poly, bound),
            bound,
        }
    }

    pub fn scale(&self, c: &BigInt) -> TruncatedSeries {
        TruncatedSeries {
            poly: self.poly.scale(c),
            bound: self.bound,
        }
    }

    /// Multiplicative inverse, by summing `(1 - g)^m` for `m = 0..=bound`.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        series_invert(&self.poly, self.bound)
    }

    /// Coefficient-wise reduction mod 2.
    pub fn mod2(&self) -> TruncatedSeries {
        TruncatedSeries {
            poly: self.poly.mod2(),
            bound: self.bound,
        }
    }
}

/// Inverse of `g` modulo terms of total degree above `bound`.
///
/// Requires the constant term of `g` to be exactly one; then `1 - g` has no
/// constant term and the Neumann sum terminates after `bound` steps.
pub fn series_invert(g: &Poly, bound: u32) -> Result<TruncatedSeries> {
    if !g.constant_term().is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let step = &Poly::one() - &g.truncate(bound);
    let mut power = Poly::one();
    let mut total = Poly::one();
    for _ in 0..bound {
        power = power.mul_truncated(&step, bound);
        if power.is_zero() {
            break;
        }
        total = &total + &power;
    }
    Ok(TruncatedSeries { poly: total, bound })
}

pub fn series_mul(f: &Poly, g: &Poly, bound: u32) -> TruncatedSeries {
    TruncatedSeries {
        poly: f.truncate(bound).mul_truncated(&g.truncate(bound), bound),
        bound,
    }
}

/// Expansion of `f / g` up to total degree `bound`.
pub fn series_div(f: &Poly, g: &Poly, bound: u32) -> Result<TruncatedSeries> {
    let inv = series_invert(g, bound)?;
    Ok(series_mul(f, inv.poly(), bound))
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg > {})", self.poly, self.bound)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn invert_one_plus_z_cycle() {
        let z = p("z1*z2*z3*z4");
        let inv = series_invert(&(&Poly::one() + &z), 12).unwrap();
        assert_eq!(
            inv.poly(),
            &p("1 - z1*z2*z3*z4 + z1^2*z2^2*z3^2*z4^2 - z1^3*z2^3*z3^3*z4^3")
        );
        // The bound is inclusive: Z^3 has degree 12. At L = 11 it drops out.
        let inv11 = series_invert(&(&Poly::one() + &z), 11).unwrap();
        assert_eq!(inv11.poly(), &p("1 - z1*z2*z3*z4 + z1^2*z2^2*z3^2*z4^2"));
    }

    #[test]
    fn invert_identity() {
        for l in [0, 3, 9] {
            assert_eq!(series_invert(&Poly::one(), l).unwrap().poly(), &Poly::one());
        }
    }

    #[test]
    fn invert_cdef_multiplies_back_to_one() {
        let g = p("1 + c*d*e*f");
        let h = series_invert(&g, 8).unwrap();
        assert_eq!(h.poly(), &p("1 - c*d*e*f + c^2*d^2*e^2*f^2"));
        assert_eq!(g.mul_truncated(h.poly(), 8), Poly::one());
        // Oracle: the discrepancy lives exactly at degree 12 = 3 * 4 > 8.
        let full = &g * h.poly();
        assert_eq!(full, p("1 + c^3*d^3*e^3*f^3"));
    }

    #[test]
    fn invert_rejects_bad_constant_term() {
        assert!(matches!(series_invert(&p("2 + x"), 4), Err(Error::ConstantTermNotOne)));
        assert!(matches!(series_invert(&p("x"), 4), Err(Error::ConstantTermNotOne)));
    }

    #[test]
    fn division_m12_fig1_shape() {
        let num = p("a1*z4*a2");
        let den = p("1 + z1*z2*z3*z4");
        assert_eq!(
            series_div(&num, &den, 10).unwrap().poly(),
            &p("a1*z4*a2 - a1*z4*a2*z1*z2*z3*z4")
        );
        assert_eq!(
            series_div(&num, &den, 11).unwrap().poly(),
            &p("a1*z4*a2 - a1*z4*a2*z1*z2*z3*z4 + a1*z4^3*a2*z1^2*z2^2*z3^2")
        );
        assert!(series_div(&Poly::zero(), &den, 7).unwrap().is_zero());
    }
}
