//! Flows, conservative flows and alternating flows, and the Plücker
//! coordinate formulas built from their weight generating functions.

mod alternating;

pub use alternating::{
    all_alternating_flows, alternating_flow, enumerate_alternating_flows, is_alternating, left_turn_walks,
    plucker_general, AlternatingFlow, FlowStats, ALTERNATING_EDGE_LIMIT,
};

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::network::Network;
use crate::poly::{series_div, Poly, RationalFn};
use crate::walks::{minor_series, require_perfectly_oriented, Walk};

/// A flow from the sources to a column set, split into vertex-disjoint
/// self-avoiding walks (one per source, in source order) and cycles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flow {
    pub edges: Vec<usize>,
    pub walks: Vec<Walk>,
    pub cycles: Vec<Vec<usize>>,
}

impl Flow {
    /// Sorted end positions of the walks.
    pub fn destination(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.walks.iter().map(|w| w.end).collect();
        d.sort();
        d
    }

    pub fn is_conservative(&self) -> bool {
        self.walks.iter().all(Walk::is_empty)
    }

    pub fn weight(&self, n: &Network) -> Result<Poly> {
        n.weight_of(&self.edges)
    }

    pub fn edge_ids<'a>(&self, n: &'a Network) -> Vec<&'a str> {
        let mut ids: Vec<&str> = self.edges.iter().map(|&e| n.edge_id(e)).collect();
        ids.sort();
        ids
    }
}

/// A simple directed cycle: its edges in order and its vertex set.
#[derive(Clone, Debug)]
pub struct Cycle {
    pub edges: Vec<usize>,
    pub vertices: FixedBitSet,
}

/// Every simple cycle, each listed once starting from its smallest vertex.
pub fn simple_cycles(n: &Network) -> Vec<Cycle> {
    let nv = n.vertex_count();
    let mut out = Vec::new();
    let mut on_path = FixedBitSet::with_capacity(nv);
    let mut path = Vec::new();
    for s in n.interior_vertices() {
        on_path.insert(s);
        cycles_from(n, s, s, &mut on_path, &mut path, &mut out);
        on_path.set(s, false);
    }
    out
}

fn cycles_from(
    n: &Network,
    start: usize,
    v: usize,
    on_path: &mut FixedBitSet,
    path: &mut Vec<usize>,
    out: &mut Vec<Cycle>,
) {
    for &e in n.out_edges(v) {
        let h = n.head(e);
        if h == start {
            path.push(e);
            out.push(Cycle {
                edges: path.clone(),
                vertices: on_path.clone(),
            });
            path.pop();
        } else if h > start && !n.is_boundary(h) && !on_path.contains(h) {
            on_path.insert(h);
            path.push(e);
            cycles_from(n, start, h, on_path, path, out);
            path.pop();
            on_path.set(h, false);
        }
    }
}

/// Visits every set of pairwise vertex-disjoint cycles avoiding `used`,
/// including the empty set.
fn for_each_cycle_set(
    cycles: &[Cycle],
    from: usize,
    used: &mut FixedBitSet,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    visit(chosen);
    for c in from..cycles.len() {
        if cycles[c].vertices.is_disjoint(used) {
            used.union_with(&cycles[c].vertices);
            chosen.push(c);
            for_each_cycle_set(cycles, c + 1, used, chosen, visit);
            chosen.pop();
            used.difference_with(&cycles[c].vertices);
        }
    }
}

struct FlowSearch<'a> {
    n: &'a Network,
    cols: &'a [usize],
    cycles: Vec<Cycle>,
    used: FixedBitSet,
    walks: Vec<Walk>,
}

impl FlowSearch<'_> {
    fn sources(&self) -> &[usize] {
        self.n.sources().positions()
    }

    fn route(&mut self, t: usize, visit: &mut Visitor) {
        if t == self.sources().len() {
            let cycles = std::mem::take(&mut self.cycles);
            let walks = std::mem::take(&mut self.walks);
            let mut used = self.used.clone();
            for_each_cycle_set(&cycles, 0, &mut used, &mut Vec::new(), &mut |chosen| {
                visit(&walks, &cycles, chosen)
            });
            self.cycles = cycles;
            self.walks = walks;
            return;
        }
        let i = self.sources()[t];
        let b = self.n.vertex_at(i);
        if self.cols.contains(&i) {
            self.used.insert(b);
            self.walks.push(Walk::trivial(i));
            self.route(t + 1, visit);
            self.walks.pop();
            self.used.set(b, false);
            return;
        }
        self.used.insert(b);
        let mut path = Vec::new();
        self.extend(i, b, t, &mut path, visit);
        self.used.set(b, false);
    }

    fn extend(&mut self, i: usize, v: usize, t: usize, path: &mut Vec<usize>, visit: &mut Visitor) {
        let n = self.n;
        for &e in n.out_edges(v) {
            let h = n.head(e);
            if self.used.contains(h) {
                continue;
            }
            path.push(e);
            self.used.insert(h);
            if let Some(j) = n.position(h) {
                if self.cols.contains(&j) {
                    self.walks.push(Walk {
                        start: i,
                        end: j,
                        edges: path.clone(),
                    });
                    self.route(t + 1, visit);
                    self.walks.pop();
                }
            } else {
                self.extend(i, h, t, path, visit);
            }
            self.used.set(h, false);
            path.pop();
        }
    }
}

/// Calls `visit(walks, cycles, chosen)` for each flow to `cols`; the flow's
/// cycles are `chosen` indices into `cycles`.
fn for_each_flow(n: &Network, cols: &[usize], visit: &mut Visitor) {
    let mut search = FlowSearch {
        n,
        cols,
        cycles: simple_cycles(n),
        used: FixedBitSet::with_capacity(n.vertex_count()),
        walks: Vec::new(),
    };
    search.route(0, visit);
}

/// Receives each walk system, the cycle list and the chosen cycle indices.
type Visitor<'v> = dyn FnMut(&[Walk], &[Cycle], &[usize]) + 'v;

/// All flows from the sources to `cols`, sorted by edge-id set.
pub fn enumerate_flows(n: &Network, cols: &[usize]) -> Result<Vec<Flow>> {
    require_perfectly_oriented(n)?;
    n.check_columns(cols)?;
    let mut out = Vec::new();
    for_each_flow(n, cols, &mut |walks, cycles, chosen| {
        let mut edges: Vec<usize> = walks.iter().flat_map(|w| w.edges.iter().copied()).collect();
        let cyc: Vec<Vec<usize>> = chosen.iter().map(|&c| cycles[c].edges.clone()).collect();
        edges.extend(cyc.iter().flatten());
        edges.sort();
        out.push(Flow {
            edges,
            walks: walks.to_vec(),
            cycles: cyc,
        });
    });
    out.sort_by_cached_key(|f| f.edge_ids(n).into_iter().map(str::to_owned).collect::<Vec<_>>());
    Ok(out)
}

/// Weight generating function of the flows to `cols`.
pub fn flow_gf(n: &Network, cols: &[usize]) -> Result<Poly> {
    require_perfectly_oriented(n)?;
    n.check_columns(cols)?;
    let weights: Vec<Poly> = (0..n.edge_count()).map(|e| n.weight_poly(e)).collect::<Result<_>>()?;
    let mut total = Poly::zero();
    for_each_flow(n, cols, &mut |walks, cycles, chosen| {
        let mut w = Poly::one();
        for e in walks.iter().flat_map(|w| w.edges.iter()) {
            w = &w * &weights[*e];
        }
        for &c in chosen {
            for e in &cycles[c].edges {
                w = &w * &weights[*e];
            }
        }
        total = &total + &w;
    });
    Ok(total)
}

/// Unions of pairwise disjoint cycles, the empty flow included.
pub fn conservative_flows(n: &Network) -> Result<Vec<Flow>> {
    let sources = n.sources().positions().to_vec();
    enumerate_flows(n, &sources)
}

pub fn conservative_gf(n: &Network) -> Result<Poly> {
    let sources = n.sources().positions().to_vec();
    flow_gf(n, &sources)
}

/// `Δ_J` as flows to `J` over conservative flows, unreduced.
pub fn plucker(n: &Network, cols: &[usize]) -> Result<RationalFn> {
    RationalFn::new(flow_gf(n, cols)?, conservative_gf(n)?)
}

/// `M_ij` from the flow formula for `Δ_{(I∖{i})∪{j}}`; planarity is not
/// needed for single entries.
pub fn plucker_nonplanar_measurement(n: &Network, i: usize, j: usize) -> Result<RationalFn> {
    require_perfectly_oriented(n)?;
    n.check_source(i)?;
    n.check_position(j)?;
    let mut cols: Vec<usize> = n.sources().positions().iter().copied().filter(|&s| s != i).collect();
    if cols.contains(&j) {
        return RationalFn::new(Poly::zero(), Poly::one());
    }
    cols.push(j);
    cols.sort();
    plucker(n, &cols)
}

/// Whether the flow formula and the determinant agree mod 2 through degree
/// `bound`.
pub fn gf2_plucker_check(n: &Network, cols: &[usize], bound: u32) -> Result<bool> {
    let f = flow_gf(n, cols)?;
    let g = conservative_gf(n)?;
    let by_flows = series_div(&f, &g, bound)?;
    let by_minor = minor_series(n, cols, bound)?;
    Ok(by_flows.mod2() == by_minor.mod2())
}

#[cfg(test)]
mod tests;
