//! Alternating flows in planar networks of arbitrary orientation.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::network::{blowup_vertices, End, Network};
use crate::poly::{Poly, RationalFn};
use crate::walks::Walk;

/// Edge subsets are enumerated exhaustively, so the network must be small.
pub const ALTERNATING_EDGE_LIMIT: usize = 22;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct FlowStats {
    /// Σ_v max(in-degree of v in F − 1, 0).
    pub theta: u32,
    /// Edges of F entering a blowup vertex.
    pub epsilon: u32,
    /// Blowup vertices touched by F.
    pub beta: u32,
    /// Blowup vertices untouched by F.
    pub eta: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlternatingFlow {
    /// Sorted edge indices.
    pub edges: Vec<usize>,
    /// Left-turn walks, one per source in source order.
    pub walks: Vec<Walk>,
    pub stats: FlowStats,
}

impl AlternatingFlow {
    pub fn destination(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.walks.iter().map(|w| w.end).collect();
        d.sort();
        d
    }

    pub fn weight(&self, n: &Network) -> Result<Poly> {
        n.weight_of(&self.edges)
    }

    /// `(source, end)` pairs of the left-turn walks.
    pub fn walk_map(&self) -> Vec<(usize, usize)> {
        self.walks.iter().map(|w| (w.start, w.end)).collect()
    }
}

fn in_mask(mask: u64, e: usize) -> bool {
    mask >> e & 1 == 1
}

/// The walks `W_i`: from each source, follow the edges of `F`, leaving each
/// interior vertex by the first outgoing `F` half-edge clockwise after the
/// arrival half-edge. A source with no edge in `F` gets the trivial walk.
pub fn left_turn_walks(n: &Network, edges: &[usize]) -> Vec<Walk> {
    let member = membership(n, edges);
    left_turn_walks_by(n, &|e| member[e])
}

fn membership(n: &Network, edges: &[usize]) -> Vec<bool> {
    let mut member = vec![false; n.edge_count()];
    for &e in edges {
        member[e] = true;
    }
    member
}

fn left_turn_walks_by(n: &Network, has: &dyn Fn(usize) -> bool) -> Vec<Walk> {
    n.sources()
        .positions()
        .iter()
        .map(|&i| {
            let b = n.vertex_at(i);
            let Some(&first) = n.out_edges(b).iter().find(|&&e| has(e)) else {
                return Walk::trivial(i);
            };
            let mut path = vec![first];
            let mut e = first;
            loop {
                let v = n.head(e);
                if let Some(j) = n.position(v) {
                    return Walk {
                        start: i,
                        end: j,
                        edges: path,
                    };
                }
                let rot = n.rotation(v);
                let at = rot
                    .iter()
                    .position(|d| d.edge == e && d.end == End::Head)
                    .expect("arrival half-edge in rotation");
                let next = (1..rot.len())
                    .map(|k| rot[(at + k) % rot.len()])
                    .find(|d| d.end == End::Tail && has(d.edge))
                    .expect("alternation guarantees an exit");
                e = next.edge;
                path.push(e);
                assert!(path.len() <= n.edge_count(), "left-turn walk does not terminate");
            }
        })
        .collect()
}

fn stats(n: &Network, has: &dyn Fn(usize) -> bool, blowups: &[bool]) -> FlowStats {
    let mut indeg = vec![0u32; n.vertex_count()];
    let mut touched = vec![false; n.vertex_count()];
    let mut s = FlowStats::default();
    for e in (0..n.edge_count()).filter(|&e| has(e)) {
        let (t, h) = (n.tail(e), n.head(e));
        indeg[h] += 1;
        touched[t] = true;
        touched[h] = true;
        if blowups[h] {
            s.epsilon += 1;
        }
    }
    s.theta = indeg.iter().map(|&d| d.saturating_sub(1)).sum();
    for v in 0..n.vertex_count() {
        if blowups[v] {
            if touched[v] {
                s.beta += 1;
            } else {
                s.eta += 1;
            }
        }
    }
    s
}

/// Edge masks of the subsets of edges at `v` whose half-edges alternate in
/// orientation around `v`.
fn local_patterns(n: &Network, v: usize) -> (u64, Vec<u64>) {
    let rot = n.rotation(v);
    let mut incident: Vec<usize> = rot.iter().map(|d| d.edge).collect();
    incident.sort();
    incident.dedup();
    let all: u64 = incident.iter().fold(0, |m, &e| m | 1 << e);
    let mut patterns = Vec::new();
    for pick in 0u64..(1 << incident.len()) {
        let mask = incident
            .iter()
            .enumerate()
            .filter(|(k, _)| pick >> k & 1 == 1)
            .fold(0u64, |m, (_, &e)| m | 1 << e);
        let ends: Vec<End> = rot.iter().filter(|d| in_mask(mask, d.edge)).map(|d| d.end).collect();
        let alternates = (0..ends.len()).all(|k| ends[k] != ends[(k + 1) % ends.len()]);
        if alternates {
            patterns.push(mask);
        }
    }
    (all, patterns)
}

fn search(locals: &[(u64, Vec<u64>)], idx: usize, decided: u64, chosen: u64, free: &[usize], out: &mut Vec<u64>) {
    if idx == locals.len() {
        for pick in 0u64..(1 << free.len()) {
            let extra = free
                .iter()
                .enumerate()
                .filter(|(k, _)| pick >> k & 1 == 1)
                .fold(0u64, |m, (_, &e)| m | 1 << e);
            out.push(chosen | extra);
        }
        return;
    }
    let (all, patterns) = &locals[idx];
    let fixed = decided & all;
    for &p in patterns {
        if p & fixed == chosen & fixed {
            search(locals, idx + 1, decided | all, chosen | p, free, out);
        }
    }
}

fn blowup_flags(n: &Network) -> Result<Vec<bool>> {
    let blown = blowup_vertices(n)?;
    Ok((0..n.vertex_count()).map(|v| blown.contains(n.vertex_id(v))).collect())
}

/// Whether the edges of `edges` alternate in orientation around every
/// interior vertex. Needs a rotation system.
pub fn is_alternating(n: &Network, edges: &[usize]) -> bool {
    let member = membership(n, edges);
    n.interior_vertices().all(|v| {
        let ends: Vec<End> = n.rotation(v).iter().filter(|d| member[d.edge]).map(|d| d.end).collect();
        (0..ends.len()).all(|k| ends[k] != ends[(k + 1) % ends.len()])
    })
}

/// Walks and statistics of an alternating edge set.
pub fn alternating_flow(n: &Network, edges: &[usize]) -> Result<AlternatingFlow> {
    let blowups = blowup_flags(n)?;
    let member = membership(n, edges);
    let mut edges = edges.to_vec();
    edges.sort();
    edges.dedup();
    Ok(AlternatingFlow {
        edges,
        walks: left_turn_walks_by(n, &|e| member[e]),
        stats: stats(n, &|e| member[e], &blowups),
    })
}

/// Every alternating edge subset with its left-turn walks and statistics.
pub fn all_alternating_flows(n: &Network) -> Result<Vec<AlternatingFlow>> {
    if !n.has_rotation() {
        return Err(Error::MissingRotation);
    }
    if n.edge_count() > ALTERNATING_EDGE_LIMIT {
        return Err(Error::TooLarge {
            edges: n.edge_count(),
            limit: ALTERNATING_EDGE_LIMIT,
        });
    }
    let locals: Vec<(u64, Vec<u64>)> = n.interior_vertices().map(|v| local_patterns(n, v)).collect();
    let free: Vec<usize> = (0..n.edge_count())
        .filter(|&e| n.is_boundary(n.tail(e)) && n.is_boundary(n.head(e)))
        .collect();
    let mut masks = Vec::new();
    search(&locals, 0, 0, 0, &free, &mut masks);

    let blowups = blowup_flags(n)?;
    let mut out: Vec<AlternatingFlow> = masks
        .into_iter()
        .map(|mask| AlternatingFlow {
            edges: (0..n.edge_count()).filter(|&e| in_mask(mask, e)).collect(),
            walks: left_turn_walks_by(n, &|e| in_mask(mask, e)),
            stats: stats(n, &|e| in_mask(mask, e), &blowups),
        })
        .collect();
    out.sort_by_cached_key(|f| {
        let mut ids: Vec<String> = f.edges.iter().map(|&e| n.edge_id(e).to_owned()).collect();
        ids.sort();
        ids
    });
    Ok(out)
}

/// The alternating flows from the sources to `cols`.
pub fn enumerate_alternating_flows(n: &Network, cols: &[usize]) -> Result<Vec<AlternatingFlow>> {
    n.check_columns(cols)?;
    Ok(all_alternating_flows(n)?
        .into_iter()
        .filter(|f| f.destination() == cols)
        .collect())
}

fn weighted_sum(n: &Network, flows: &[AlternatingFlow], cols: &[usize]) -> Result<Poly> {
    let mut total = Poly::zero();
    for f in flows.iter().filter(|f| f.destination() == cols) {
        let w = f.weight(n)?;
        total = &total + &w.scale(&(BigInt::from(1) << f.stats.theta));
    }
    Ok(total)
}

/// `Δ_J` for a planar network of any orientation: alternating flows to `J`
/// over conservative alternating flows, each weighted by `2^θ`.
pub fn plucker_general(n: &Network, cols: &[usize]) -> Result<RationalFn> {
    n.check_columns(cols)?;
    let flows = all_alternating_flows(n)?;
    let sources = n.sources().positions();
    RationalFn::new(weighted_sum(n, &flows, cols)?, weighted_sum(n, &flows, sources)?)
}
