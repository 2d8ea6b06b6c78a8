//! The sign-reversing involution on pairs of a conservative flow and a walk
//! tuple, run as an executable check that every non-flow term of the
//! expanded minor cancels.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::flows::{conservative_flows, enumerate_flows};
use crate::network::Network;
use crate::poly::{Monomial, Poly};
use crate::walks::{bijections, enumerate_walks, loop_erase, require_perfectly_oriented, xing, Bijection, Walk};

/// A conservative flow `C` (sorted edge indices) and one walk per source, in
/// source order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WalkSystem {
    pub conservative: Vec<usize>,
    pub walks: Vec<Walk>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedWeight {
    pub sign: i8,
    pub coeff: BigInt,
    pub monomial: Monomial,
}

impl SignedWeight {
    pub fn to_poly(&self) -> Poly {
        let mut c = self.coeff.clone();
        if self.sign < 0 {
            c = -c;
        }
        Poly::term(c, self.monomial.clone())
    }
}

impl WalkSystem {
    pub fn bijection(&self) -> Result<Bijection> {
        Bijection::new(self.walks.iter().map(|w| (w.start, w.end)).collect())
    }

    /// Every edge of `C` and of the walks, with multiplicity, sorted.
    pub fn edge_multiset(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.conservative.clone();
        all.extend(self.walks.iter().flat_map(|w| w.edges.iter().copied()));
        all.sort();
        all
    }

    fn check(&self, n: &Network) -> Result<()> {
        let bad = |why: &str| Err(Error::BadWalkSystem(why.to_owned()));
        let sources = n.sources().positions();
        if self.walks.len() != sources.len() || self.walks.iter().zip(sources).any(|(w, &i)| w.start != i) {
            return bad("walks must start at the sources, in order");
        }
        for w in &self.walks {
            let mut v = n.vertex_at(w.start);
            for &e in &w.edges {
                if e >= n.edge_count() || n.tail(e) != v {
                    return bad("walk edges do not chain");
                }
                v = n.head(e);
            }
            if n.position(v) != Some(w.end) {
                return bad("walk does not end at its stated boundary vertex");
            }
        }
        if !self.conservative.windows(2).all(|p| p[0] < p[1]) {
            return bad("conservative part must be a sorted edge set");
        }
        let mut indeg = vec![0usize; n.vertex_count()];
        let mut outdeg = vec![0usize; n.vertex_count()];
        for &e in &self.conservative {
            if e >= n.edge_count() {
                return bad("unknown edge");
            }
            outdeg[n.tail(e)] += 1;
            indeg[n.head(e)] += 1;
        }
        if (0..n.vertex_count()).any(|v| indeg[v] != outdeg[v] || indeg[v] > 1 || (n.is_boundary(v) && indeg[v] > 0)) {
            return bad("conservative part is not a union of disjoint cycles");
        }
        Ok(())
    }
}

fn vertex_set(n: &Network, w: &Walk) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n.vertex_count());
    for v in w.vertices(n) {
        s.insert(v);
    }
    s
}

fn cycle_vertices(n: &Network, edges: &[usize]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n.vertex_count());
    for &e in edges {
        s.insert(n.tail(e));
    }
    s
}

/// The smallest source index whose walk is not self-avoiding or meets `C`
/// or a later walk, as a position in the walk tuple.
pub fn offending_index(n: &Network, ws: &WalkSystem) -> Option<usize> {
    let c = cycle_vertices(n, &ws.conservative);
    let sets: Vec<FixedBitSet> = ws.walks.iter().map(|w| vertex_set(n, w)).collect();
    (0..ws.walks.len()).find(|&t| {
        !ws.walks[t].is_self_avoiding(n)
            || !sets[t].is_disjoint(&c)
            || sets[t + 1..].iter().any(|s| !sets[t].is_disjoint(s))
    })
}

/// The walks are self-avoiding, pairwise vertex-disjoint and disjoint from
/// `C`, so that together they form a flow.
pub fn is_flow_pair(n: &Network, ws: &WalkSystem) -> bool {
    offending_index(n, ws).is_none()
}

/// Splits a union of disjoint cycles into cycles, each starting at its
/// smallest edge index.
fn cycles_of(n: &Network, edges: &[usize]) -> Vec<Vec<usize>> {
    let mut out_edge = vec![usize::MAX; n.vertex_count()];
    for &e in edges {
        out_edge[n.tail(e)] = e;
    }
    let mut seen = vec![false; n.edge_count()];
    let mut out = Vec::new();
    for &start in edges {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            cycle.push(e);
            e = out_edge[n.head(e)];
        }
        out.push(cycle);
    }
    out
}

/// One application of the involution: swap tails at the first shared edge
/// with a later walk, or else move the first cycle met between `C` and the
/// offending walk.
pub fn phi(n: &Network, ws: &WalkSystem) -> Result<WalkSystem> {
    ws.check(n)?;
    let i = offending_index(n, ws).ok_or(Error::IsAlreadyFlow)?;
    let p = &ws.walks[i].edges;
    let in_c = |e: usize| ws.conservative.binary_search(&e).is_ok();
    let later = |e: usize| (i + 1..ws.walks.len()).find(|&a| ws.walks[a].edges.contains(&e));
    let q = (0..p.len())
        .find(|&q| in_c(p[q]) || later(p[q]).is_some() || p[q + 1..].contains(&p[q]))
        .ok_or_else(|| Error::BadWalkSystem("no offending edge; is the network perfectly oriented?".into()))?;

    let mut out = ws.clone();
    if let Some(a) = later(p[q]) {
        let h = &ws.walks[a].edges;
        let q2 = h.iter().position(|&e| e == p[q]).expect("shared edge");
        let mut pi = p[..q].to_vec();
        pi.extend_from_slice(&h[q2..]);
        let mut pa = h[..q2].to_vec();
        pa.extend_from_slice(&p[q..]);
        out.walks[i] = Walk {
            start: ws.walks[i].start,
            end: ws.walks[a].end,
            edges: pi,
        };
        out.walks[a] = Walk {
            start: ws.walks[a].start,
            end: ws.walks[i].end,
            edges: pa,
        };
        return Ok(out);
    }

    let mut s = usize::MAX;
    let mut r = 0;
    for (k, &e) in p.iter().enumerate() {
        if let Some(first) = p[..k].iter().position(|&x| x == e) {
            (s, r) = (k, first);
            break;
        }
    }
    let t = p.iter().position(|&e| in_c(e)).unwrap_or(usize::MAX);
    if t < s {
        let cycle = cycles_of(n, &ws.conservative)
            .into_iter()
            .find(|c| c.contains(&p[t]))
            .expect("edge of C lies on a cycle");
        let at = cycle.iter().position(|&e| e == p[t]).expect("edge on cycle");
        let mut edges = p[..t].to_vec();
        edges.extend(cycle[at..].iter().chain(&cycle[..at]));
        edges.extend_from_slice(&p[t..]);
        out.walks[i].edges = edges;
        out.conservative.retain(|e| !cycle.contains(e));
    } else {
        let mut edges = p[..r].to_vec();
        edges.extend_from_slice(&p[s..]);
        out.walks[i].edges = edges;
        out.conservative.extend_from_slice(&p[r..s]);
        out.conservative.sort();
    }
    Ok(out)
}

/// `(−1)^{xing(π) + Σ loop(P_i)}` times the product of all edge weights.
pub fn signed_weight(n: &Network, ws: &WalkSystem) -> Result<SignedWeight> {
    let loops: usize = ws.walks.iter().map(|w| loop_erase(w).1).sum();
    let parity = xing(&ws.bijection()?) + loops;
    let (coeff, monomial) = product(n, &ws.edge_multiset())?;
    Ok(SignedWeight {
        sign: if parity % 2 == 0 { 1 } else { -1 },
        coeff,
        monomial,
    })
}

fn product(n: &Network, edges: &[usize]) -> Result<(BigInt, Monomial)> {
    let mut coeff = BigInt::one();
    let mut monomial = Monomial::one();
    for &e in edges {
        let w = n.weight(e);
        coeff *= w
            .int_coeff()
            .ok_or_else(|| Error::NonIntegralWeight(n.edge_id(e).to_owned()))?;
        monomial = monomial.mul(w.monomial());
    }
    Ok((coeff, monomial))
}

/// Every walk system for `cols` using at most `budget` edges in total.
pub fn walk_systems(n: &Network, cols: &[usize], budget: usize) -> Result<Vec<WalkSystem>> {
    require_perfectly_oriented(n)?;
    n.check_columns(cols)?;
    let sources = n.sources().positions();
    let conservative: Vec<Vec<usize>> = conservative_flows(n)?
        .into_iter()
        .map(|f| f.edges)
        .filter(|e| e.len() <= budget)
        .collect();
    let mut out = Vec::new();
    for pi in bijections(sources, cols) {
        let options: Vec<Vec<Walk>> = pi
            .pairs()
            .iter()
            .map(|&(i, j)| enumerate_walks(n, i, j, budget))
            .collect::<Result<_>>()?;
        for c in &conservative {
            let mut chosen = Vec::new();
            tuples(&options, budget - c.len(), &mut chosen, &mut |walks| {
                out.push(WalkSystem {
                    conservative: c.clone(),
                    walks: walks.to_vec(),
                })
            });
        }
    }
    Ok(out)
}

fn tuples(options: &[Vec<Walk>], budget: usize, chosen: &mut Vec<Walk>, visit: &mut dyn FnMut(&[Walk])) {
    let t = chosen.len();
    if t == options.len() {
        visit(chosen);
        return;
    }
    // Options are sorted by length.
    for w in options[t].iter().take_while(|w| w.len() <= budget) {
        chosen.push(w.clone());
        tuples(options, budget - w.len(), chosen, visit);
        chosen.pop();
    }
}

/// Outcome of running the involution over every bounded walk system.
#[derive(Clone, Debug, Default)]
pub struct CancellationReport {
    pub systems: usize,
    pub flow_pairs: usize,
    /// Human-readable descriptions of the systems where a property broke.
    pub failures: Vec<String>,
    /// Signed sum over all systems.
    pub total: Poly,
    /// Sum over the flows with at most `budget` edges, enumerated directly.
    pub flows: Poly,
}

impl CancellationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.total == self.flows
    }
}

/// Checks on every walk system within `budget` edges that φ is an involution
/// preserving the edge multiset and the offending index while flipping the
/// sign, and that the signed total equals the sum over flows.
pub fn cancellation_report(n: &Network, cols: &[usize], budget: usize) -> Result<CancellationReport> {
    let systems = walk_systems(n, cols, budget)?;
    let mut report = CancellationReport {
        systems: systems.len(),
        ..CancellationReport::default()
    };
    for ws in &systems {
        let sw = signed_weight(n, ws)?;
        report.total = &report.total + &sw.to_poly();
        if is_flow_pair(n, ws) {
            report.flow_pairs += 1;
            if sw.sign != 1 {
                report.failures.push(format!("flow pair with negative sign: {ws:?}"));
            }
            continue;
        }
        let image = phi(n, ws)?;
        let back = phi(n, &image)?;
        let isw = signed_weight(n, &image)?;
        if back != *ws {
            report.failures.push(format!("φ∘φ ≠ id on {ws:?}"));
        }
        if image.edge_multiset() != ws.edge_multiset() {
            report.failures.push(format!("φ changes edges of {ws:?}"));
        }
        if isw.sign != -sw.sign {
            report.failures.push(format!("φ keeps the sign of {ws:?}"));
        }
        if offending_index(n, &image) != offending_index(n, ws) {
            report.failures.push(format!("φ moves the offending index of {ws:?}"));
        }
    }
    for f in enumerate_flows(n, cols)?
        .into_iter()
        .filter(|f| f.edges.len() <= budget)
    {
        let (c, m) = product(n, &f.edges)?;
        report.flows = &report.flows + &Poly::term(c, m);
    }
    Ok(report)
}

pub fn cancellation_check(n: &Network, cols: &[usize], budget: usize) -> Result<bool> {
    Ok(cancellation_report(n, cols, budget)?.passed())
}
