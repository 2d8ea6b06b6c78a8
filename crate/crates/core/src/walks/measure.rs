use num_bigint::BigInt;
use num_traits::One;

use super::det::determinant;
use crate::error::{Error, Result};
use crate::network::{not_perfectly_oriented_at, Network, SourceIndexSet};
use crate::poly::{Monomial, Poly, TruncatedSeries};

/// Number of sources strictly between positions `i` and `j`.
pub fn sign_s(sources: &SourceIndexSet, i: usize, j: usize) -> usize {
    let (lo, hi) = (i.min(j), i.max(j));
    sources.positions().iter().filter(|&&p| lo < p && p < hi).count()
}

pub(crate) fn require_perfectly_oriented(n: &Network) -> Result<()> {
    match not_perfectly_oriented_at(n) {
        Some(v) => Err(Error::NotPerfectlyOriented(n.vertex_id(v).to_owned())),
        None => Ok(()),
    }
}

/// Fails when some cycle has weight degree 0: its walk series would not
/// truncate by degree.
pub(crate) fn require_no_degree_zero_cycle(n: &Network) -> Result<()> {
    let nv = n.vertex_count();
    let mut indeg = vec![0usize; nv];
    let flat: Vec<usize> = (0..n.edge_count()).filter(|&e| n.weight_degree(e) == 0).collect();
    for &e in &flat {
        indeg[n.head(e)] += 1;
    }
    let mut ready: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = ready.pop() {
        removed += 1;
        for &e in n.out_edges(v) {
            if n.weight_degree(e) == 0 {
                indeg[n.head(e)] -= 1;
                if indeg[n.head(e)] == 0 {
                    ready.push(n.head(e));
                }
            }
        }
    }
    if removed == nv {
        Ok(())
    } else {
        Err(Error::DegreeZeroCycle)
    }
}

struct RowSearch<'a> {
    n: &'a Network,
    bound: u32,
    weights: Vec<(BigInt, Monomial, u32)>,
    erased: Vec<usize>,
    acc: Vec<Poly>,
}

impl RowSearch<'_> {
    /// Depth-first over walks, keeping the loop-erased prefix and its loop
    /// count up to date edge by edge.
    fn walk(&mut self, v: usize, loops: u32, coeff: &BigInt, mono: &Monomial, deg: u32) {
        let n = self.n;
        for &e in n.out_edges(v) {
            let (c, m, d) = &self.weights[e];
            let deg2 = deg + d;
            if deg2 > self.bound {
                continue;
            }
            let coeff2 = coeff * c;
            let mono2 = mono.mul(m);
            let erased_from = self.erased.iter().position(|&x| x == e);
            let removed: Vec<usize> = match erased_from {
                Some(r) => self.erased.drain(r..).collect(),
                None => Vec::new(),
            };
            let loops2 = loops + u32::from(erased_from.is_some());
            self.erased.push(e);
            let h = n.head(e);
            if n.is_boundary(h) {
                let signed = if loops2 % 2 == 0 { coeff2 } else { -coeff2 };
                self.acc[h].add_term(signed, mono2);
            } else {
                self.walk(h, loops2, &coeff2, &mono2, deg2);
            }
            self.erased.pop();
            self.erased.extend(removed);
        }
    }
}

/// `M_{i,j}` for every boundary position `j` (index `j - 1`), truncated at
/// total degree `bound`.
pub fn measurement_row(n: &Network, i: usize, bound: u32) -> Result<Vec<TruncatedSeries>> {
    require_perfectly_oriented(n)?;
    n.check_source(i)?;
    require_no_degree_zero_cycle(n)?;
    let weights = (0..n.edge_count())
        .map(|e| {
            let w = n.weight(e);
            let c = w
                .int_coeff()
                .ok_or_else(|| Error::NonIntegralWeight(n.edge_id(e).to_owned()))?;
            Ok((c, w.monomial().clone(), w.degree()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut search = RowSearch {
        n,
        bound,
        weights,
        erased: Vec::new(),
        acc: vec![Poly::zero(); n.n()],
    };
    search.walk(n.vertex_at(i), 0, &BigInt::one(), &Monomial::one(), 0);
    // The trivial walk, with sign +1.
    search.acc[i - 1].add_term(BigInt::one(), Monomial::one());
    Ok(search.acc.iter().map(|p| TruncatedSeries::new(p, bound)).collect())
}

/// `M_{i,j}`: signed sum over walks `b_i ⇝ b_j` of weight degree at most
/// `bound`, each with sign `(-1)^{loop}`.
pub fn measurement_series(n: &Network, i: usize, j: usize, bound: u32) -> Result<TruncatedSeries> {
    n.check_position(j)?;
    Ok(measurement_row(n, i, bound)?.swap_remove(j - 1))
}

/// The `k × n` matrix `a_tj = (-1)^{s(i_t, j)} M_{i_t, j}`.
pub fn measurement_matrix_series(n: &Network, bound: u32) -> Result<Vec<Vec<TruncatedSeries>>> {
    measurement_matrix_series_with(n, bound, sign_s)
}

/// As [`measurement_matrix_series`] with a replacement for `s(i, j)`.
pub fn measurement_matrix_series_with(
    n: &Network,
    bound: u32,
    sign: impl Fn(&SourceIndexSet, usize, usize) -> usize,
) -> Result<Vec<Vec<TruncatedSeries>>> {
    let sources = n.sources();
    sources
        .positions()
        .iter()
        .map(|&i| {
            let row = measurement_row(n, i, bound)?;
            Ok(row
                .into_iter()
                .enumerate()
                .map(|(col, m)| if sign(sources, i, col + 1) % 2 == 1 { m.neg() } else { m })
                .collect())
        })
        .collect()
}

/// Maximal minor on the (1-based) columns `cols` of a measurement matrix.
pub fn minor_from_matrix(matrix: &[Vec<TruncatedSeries>], cols: &[usize], bound: u32) -> TruncatedSeries {
    let sub: Vec<Vec<TruncatedSeries>> = matrix
        .iter()
        .map(|row| cols.iter().map(|&c| row[c - 1].clone()).collect())
        .collect();
    determinant(&sub, &TruncatedSeries::one(bound))
}

/// `Δ_J(A(N))` by cofactor expansion over truncated series.
pub fn minor_series(n: &Network, cols: &[usize], bound: u32) -> Result<TruncatedSeries> {
    minor_series_with_sign(n, cols, bound, sign_s)
}

pub fn minor_series_with_sign(
    n: &Network,
    cols: &[usize],
    bound: u32,
    sign: impl Fn(&SourceIndexSet, usize, usize) -> usize,
) -> Result<TruncatedSeries> {
    n.check_columns(cols)?;
    let matrix = measurement_matrix_series_with(n, bound, sign)?;
    Ok(minor_from_matrix(&matrix, cols, bound))
}
