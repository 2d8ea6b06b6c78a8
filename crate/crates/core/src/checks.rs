//! Cross-checks between independent computations of the same quantity. Each
//! returns the list of failures; an empty list means the check passed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flows::{
    conservative_gf, enumerate_flows, flow_gf, gf2_plucker_check, plucker, plucker_general,
    plucker_nonplanar_measurement, simple_cycles,
};
use crate::involution::cancellation_report;
use crate::network::{with_edge_variables, Network, SourceIndexSet};
use crate::poly::{series_div, Poly};
use crate::transform::{perfect_orient, weight_transport};
use crate::walks::{measurement_series, minor_series_with_sign, sign_s};

/// Signature of the sign exponent `s(i, j)` used in the measurement matrix.
pub type SignFn = fn(&SourceIndexSet, usize, usize) -> usize;

/// A deliberately wrong sign rule: off-diagonal signs flipped.
pub fn mutant_sign(sources: &SourceIndexSet, i: usize, j: usize) -> usize {
    sign_s(sources, i, j) + usize::from(i != j)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Failure {
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

fn fail(check: &'static str, detail: String) -> Failure {
    Failure { check, detail }
}

/// For every `J`: flows over conservative flows, expanded as a series,
/// equals the minor computed from walk series.
pub fn main_theorem(n: &Network, bound: u32, sign: SignFn) -> Result<Vec<Failure>> {
    let g = conservative_gf(n)?;
    let mut out = Vec::new();
    for cols in n.column_sets() {
        let by_flows = series_div(&flow_gf(n, &cols)?, &g, bound)?;
        let by_walks = minor_series_with_sign(n, &cols, bound, sign)?;
        if by_flows != by_walks {
            out.push(fail(
                "main-theorem",
                format!(
                    "J = {cols:?}: flows give {} but the minor is {}",
                    by_flows.poly(),
                    by_walks.poly()
                ),
            ));
        }
    }
    Ok(out)
}

/// Edge subsets enumerated for the brute-force flow check are capped here.
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 16;

/// Backtracking flow enumeration against a filter over all edge subsets:
/// balanced at interior vertices, at most one edge at each boundary vertex.
pub fn flows_vs_bruteforce(n: &Network) -> Result<Vec<Failure>> {
    if n.edge_count() > BRUTE_FORCE_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: n.edge_count(),
            limit: BRUTE_FORCE_EDGE_LIMIT,
        });
    }
    let sources = n.sources().positions();
    let mut brute: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    for mask in 0u32..(1 << n.edge_count()) {
        let mut indeg = vec![0usize; n.vertex_count()];
        let mut outdeg = vec![0usize; n.vertex_count()];
        let edges: Vec<usize> = (0..n.edge_count()).filter(|&e| mask >> e & 1 == 1).collect();
        for &e in &edges {
            outdeg[n.tail(e)] += 1;
            indeg[n.head(e)] += 1;
        }
        if n.interior_vertices().any(|v| indeg[v] != outdeg[v]) {
            continue;
        }
        let mut dest: Vec<usize> = sources
            .iter()
            .copied()
            .filter(|&i| outdeg[n.vertex_at(i)] == 0)
            .collect();
        dest.extend((1..=n.n()).filter(|&j| indeg[n.vertex_at(j)] == 1));
        dest.sort();
        brute.entry(dest).or_default().push(edges);
    }
    let mut out = Vec::new();
    for cols in n.column_sets() {
        let mut got: Vec<Vec<usize>> = enumerate_flows(n, &cols)?.into_iter().map(|f| f.edges).collect();
        got.sort();
        let mut want = brute.remove(&cols).unwrap_or_default();
        want.sort();
        if got != want {
            out.push(fail(
                "flows-bruteforce",
                format!(
                    "J = {cols:?}: backtracking found {} flows, brute force {}",
                    got.len(),
                    want.len()
                ),
            ));
        }
    }
    if let Some((dest, _)) = brute.into_iter().next() {
        out.push(fail(
            "flows-bruteforce",
            format!("brute force found flows to {dest:?}, which is not a column set"),
        ));
    }
    Ok(out)
}

fn random_positive(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.random_range(1..=9)),
        BigInt::from(rng.random_range(1..=5)),
    )
}

/// The alternating-flow formula on `n` against the flow formula on its
/// perfectly oriented rewrite: symbolically, and at `points` random positive
/// rational weights carried over by weight transport.
pub fn general_formula(n: &Network, rng: &mut ChaCha8Rng, points: usize) -> Result<Vec<Failure>> {
    let g = with_edge_variables(n);
    let (reduced, trace) = perfect_orient(&g)?;
    let free = with_edge_variables(&reduced);
    let mut out = Vec::new();
    let mut alphas = Vec::new();
    for _ in 0..points {
        let alpha: BTreeMap<String, BigRational> =
            g.edges().iter().map(|e| (e.id.clone(), random_positive(rng))).collect();
        let moved: HashMap<String, BigRational> = weight_transport(&trace, &alpha)?.into_iter().collect();
        alphas.push((alpha.into_iter().collect::<HashMap<_, _>>(), moved));
    }
    for cols in n.column_sets() {
        let general = plucker_general(&g, &cols)?;
        let reduced_fn = plucker(&reduced, &cols)?;
        if !general.equals(&reduced_fn) {
            out.push(fail(
                "general-formula",
                format!("J = {cols:?}: alternating flows give {general:?}, the rewrite gives {reduced_fn:?}"),
            ));
        }
        let free_fn = plucker(&free, &cols)?;
        for (alpha, moved) in &alphas {
            let lhs = general.specialize(alpha)?;
            let rhs = free_fn.specialize(moved)?;
            if lhs != rhs {
                out.push(fail(
                    "general-formula",
                    format!("J = {cols:?}: {lhs} ≠ {rhs} at a random point"),
                ));
            }
        }
    }
    Ok(out)
}

/// Boundary measurement of an acyclic network at given edge values, by
/// dynamic programming over a topological order.
fn path_sums(n: &Network, values: &[BigRational], from: usize) -> Vec<BigRational> {
    let nv = n.vertex_count();
    let mut indeg: Vec<usize> = (0..nv).map(|v| n.in_edges(v).len()).collect();
    let mut order = Vec::with_capacity(nv);
    let mut ready: Vec<usize> = (0..nv).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = ready.pop() {
        order.push(v);
        for &e in n.out_edges(v) {
            let h = n.head(e);
            indeg[h] -= 1;
            if indeg[h] == 0 {
                ready.push(h);
            }
        }
    }
    let mut sum = vec![BigRational::zero(); nv];
    sum[from] = BigRational::one();
    for v in order {
        if sum[v].is_zero() || (n.is_boundary(v) && v != from) {
            continue;
        }
        for &e in n.out_edges(v) {
            let add = &sum[v] * &values[e];
            sum[n.head(e)] += add;
        }
    }
    sum
}

fn gauss_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let k = m.len();
    let mut det = BigRational::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..k {
            let f = &m[r][c] / &m[c][c];
            for x in c..k {
                let sub = &f * &m[c][x];
                m[r][x] -= sub;
            }
        }
    }
    det
}

/// Acyclic networks: the conservative-flow sum is 1 and the flow sum equals
/// the minor of the path-count matrix at random positive weights.
pub fn lindstrom(n: &Network, rng: &mut ChaCha8Rng) -> Result<Vec<Failure>> {
    let mut out = Vec::new();
    if !simple_cycles(n).is_empty() {
        out.push(fail("lindstrom", "network has directed cycles".into()));
        return Ok(out);
    }
    let g = conservative_gf(n)?;
    if g != Poly::one() {
        out.push(fail("lindstrom", format!("conservative flows sum to {g}, not 1")));
    }
    let n = with_edge_variables(n);
    let values: Vec<BigRational> = (0..n.edge_count()).map(|_| random_positive(rng)).collect();
    let assignment: HashMap<String, BigRational> = n
        .edges()
        .iter()
        .zip(&values)
        .map(|(e, v)| (e.id.clone(), v.clone()))
        .collect();
    let sources = n.sources().positions();
    let rows: Vec<Vec<BigRational>> = sources
        .iter()
        .map(|&i| {
            let sums = path_sums(&n, &values, n.vertex_at(i));
            (1..=n.n())
                .map(|j| {
                    let between = sources.iter().filter(|&&p| i.min(j) < p && p < i.max(j)).count();
                    let m = sums[n.vertex_at(j)].clone();
                    if between % 2 == 1 {
                        -m
                    } else {
                        m
                    }
                })
                .collect()
        })
        .collect();
    for cols in n.column_sets() {
        let sub: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c - 1].clone()).collect())
            .collect();
        let det = gauss_det(sub);
        let flows = flow_gf(&n, &cols)?.specialize(&assignment)?;
        if det != flows {
            out.push(fail(
                "lindstrom",
                format!("J = {cols:?}: determinant {det}, flows {flows}"),
            ));
        }
    }
    Ok(out)
}

/// Runs the involution over all walk systems within `budget` edges, for
/// every `J`.
pub fn involution(n: &Network, budget: usize) -> Result<Vec<Failure>> {
    let mut out = Vec::new();
    for cols in n.column_sets() {
        let report = cancellation_report(n, &cols, budget)?;
        out.extend(
            report
                .failures
                .iter()
                .take(3)
                .map(|f| fail("involution", format!("J = {cols:?}: {f}"))),
        );
        if report.total != report.flows {
            out.push(fail(
                "involution",
                format!(
                    "J = {cols:?}: walk systems sum to {} but flows to {}",
                    report.total, report.flows
                ),
            ));
        }
    }
    Ok(out)
}

/// Single entries need no planarity: the flow ratio for `(I∖{i})∪{j}`
/// matches the walk series. Full minors still agree mod 2.
pub fn nonplanar_entries(n: &Network, bound: u32) -> Result<Vec<Failure>> {
    let mut out = Vec::new();
    for &i in n.sources().positions() {
        for j in 1..=n.n() {
            let ratio = plucker_nonplanar_measurement(n, i, j)?;
            let by_flows = ratio.series(bound)?;
            let by_walks = measurement_series(n, i, j, bound)?;
            if by_flows != by_walks {
                out.push(fail(
                    "nonplanar-entry",
                    format!("M[{i},{j}]: {} ≠ {}", by_flows.poly(), by_walks.poly()),
                ));
            }
        }
    }
    for cols in n.column_sets() {
        if !gf2_plucker_check(n, &cols, bound)? {
            out.push(fail(
                "gf2",
                format!("J = {cols:?}: flow formula and minor differ mod 2"),
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;
    use crate::samples;

    #[test]
    fn samples_pass() {
        let fig1 = samples::fig1();
        assert!(main_theorem(&fig1, 10, sign_s).unwrap().is_empty());
        assert!(!main_theorem(&fig1, 10, mutant_sign).unwrap().is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(general_formula(&samples::network_x(), &mut rng, 5).unwrap().is_empty());
        assert!(general_formula(&fig1, &mut rng, 2).unwrap().is_empty());
        assert!(nonplanar_entries(&samples::fig6(), 10).unwrap().is_empty());
        assert!(!main_theorem(&samples::fig6(), 14, sign_s).unwrap().is_empty());
    }

    #[test]
    fn gaussian_elimination() {
        let r = |a: i64| BigRational::from_integer(a.into());
        let m = vec![vec![r(0), r(2), r(1)], vec![r(1), r(1), r(0)], vec![r(3), r(0), r(1)]];
        // 0·(1−0) − 2·(1−0) + 1·(0−3)
        assert_eq!(gauss_det(m), r(-5));
    }
}
