//! Walks between boundary vertices, loop-erasure, boundary measurements as
//! truncated series, and the minors of the boundary measurement matrix.

mod det;
mod measure;
mod xing;

pub use det::{determinant, Ring};
pub(crate) use measure::require_perfectly_oriented;
pub use measure::{
    measurement_matrix_series, measurement_matrix_series_with, measurement_row, measurement_series, minor_from_matrix,
    minor_series, minor_series_with_sign, sign_s,
};
pub use xing::{bijections, classify_pair, minor_via_bijections, xing, Bijection, PairKind};

use crate::error::Result;
use crate::network::Network;
use crate::poly::Poly;

/// A walk between boundary positions, as a sequence of edge indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Walk {
    pub start: usize,
    pub end: usize,
    pub edges: Vec<usize>,
}

impl Walk {
    pub fn trivial(pos: usize) -> Walk {
        Walk {
            start: pos,
            end: pos,
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_ids<'a>(&self, n: &'a Network) -> Vec<&'a str> {
        self.edges.iter().map(|&e| n.edge_id(e)).collect()
    }

    /// Vertices visited, in order, starting with the start vertex.
    pub fn vertices(&self, n: &Network) -> Vec<usize> {
        let mut out = vec![n.vertex_at(self.start)];
        out.extend(self.edges.iter().map(|&e| n.head(e)));
        out
    }

    pub fn weight(&self, n: &Network) -> Result<Poly> {
        n.weight_of(&self.edges)
    }

    /// No vertex repeats.
    pub fn is_self_avoiding(&self, n: &Network) -> bool {
        let vs = self.vertices(n);
        let mut seen = std::collections::HashSet::new();
        vs.iter().all(|v| seen.insert(*v))
    }
}

/// All walks from `b_i` to `b_j` with at most `max_edges` edges, shortest
/// first and then lexicographically by edge id.
pub fn enumerate_walks(n: &Network, i: usize, j: usize, max_edges: usize) -> Result<Vec<Walk>> {
    n.check_source(i)?;
    n.check_position(j)?;
    let mut out = Vec::new();
    if i == j {
        out.push(Walk::trivial(i));
    }
    let target = n.vertex_at(j);
    let mut path = Vec::new();
    extend_walks(n, n.vertex_at(i), target, max_edges, &mut path, &mut |p| {
        out.push(Walk {
            start: i,
            end: j,
            edges: p.to_vec(),
        })
    });
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.edge_ids(n).cmp(&b.edge_ids(n))));
    Ok(out)
}

fn extend_walks(
    n: &Network,
    v: usize,
    target: usize,
    budget: usize,
    path: &mut Vec<usize>,
    found: &mut impl FnMut(&[usize]),
) {
    if budget == 0 {
        return;
    }
    for &e in n.out_edges(v) {
        let h = n.head(e);
        path.push(e);
        if h == target {
            found(path);
        }
        if !n.is_boundary(h) {
            extend_walks(n, h, target, budget - 1, path, found);
        }
        path.pop();
    }
}

/// Repeatedly removes the first completed cycle: the segment `e_r .. e_{s-1}`
/// for the smallest `s` with `e_s = e_r`. Returns the erased walk and the
/// number of removals.
pub fn loop_erase(w: &Walk) -> (Walk, usize) {
    let mut stack: Vec<usize> = Vec::with_capacity(w.edges.len());
    let mut loops = 0;
    for &e in &w.edges {
        if let Some(r) = stack.iter().position(|&x| x == e) {
            stack.truncate(r);
            loops += 1;
        }
        stack.push(e);
    }
    (
        Walk {
            start: w.start,
            end: w.end,
            edges: stack,
        },
        loops,
    )
}
