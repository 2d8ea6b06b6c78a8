//! Determinants over any commutative ring, by cofactor expansion along rows
//! with memoization on the set of columns already used.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::{Poly, RationalFn, TruncatedSeries};

pub trait Ring: Clone {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Ring for TruncatedSeries {
    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        TruncatedSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        TruncatedSeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        TruncatedSeries::mul(self, other)
    }
}

impl Ring for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Ring for RationalFn {
    fn is_zero(&self) -> bool {
        RationalFn::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RationalFn::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFn::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFn::mul(self, other)
    }
}

impl Ring for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Determinant of a square matrix; `one` fixes the ring's identity (and, for
/// series, the truncation bound).
pub fn determinant<R: Ring>(m: &[Vec<R>], one: &R) -> R {
    let k = m.len();
    assert!(m.iter().all(|row| row.len() == k), "square matrix");
    assert!(k < 32, "matrix too large for column masks");
    let mut memo = HashMap::new();
    expand(m, 0, 0, one, &mut memo)
}

fn expand<R: Ring>(m: &[Vec<R>], row: usize, used: u32, one: &R, memo: &mut HashMap<u32, R>) -> R {
    if row == m.len() {
        return one.clone();
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut acc = one.sub(one);
    // Sign of column c among the unused columns, left to right.
    let mut parity = false;
    for (c, entry) in m[row].iter().enumerate() {
        if used & (1 << c) != 0 {
            continue;
        }
        if !entry.is_zero() {
            let rest = expand(m, row + 1, used | (1 << c), one, memo);
            if !rest.is_zero() {
                let term = entry.mul(&rest);
                acc = if parity { acc.sub(&term) } else { acc.add(&term) };
            }
        }
        parity = !parity;
    }
    memo.insert(used, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn leibniz(m: &[Vec<BigRational>]) -> BigRational {
        let k = m.len();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut total = q(0);
        loop {
            let inversions = (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .filter(|&(a, b)| perm[a] > perm[b])
                .count();
            let mut term = q(1);
            for (r, &c) in perm.iter().enumerate() {
                term *= &m[r][c];
            }
            if inversions % 2 == 1 {
                term = -term;
            }
            total += term;
            // next permutation
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                return total;
            };
            let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    #[test]
    fn matches_leibniz_formula() {
        let m: Vec<Vec<BigRational>> = [[2, -1, 0, 3], [1, 4, -2, 0], [0, 5, 1, 1], [7, 0, -3, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        assert_eq!(determinant(&m, &q(1)), leibniz(&m));
    }

    #[test]
    fn empty_and_singular() {
        let empty: Vec<Vec<BigRational>> = Vec::new();
        assert_eq!(determinant(&empty, &q(1)), q(1));
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(determinant(&m, &q(1)), q(0));
    }
}
