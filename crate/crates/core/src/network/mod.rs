//! Circular directed networks: the document format, validation, and an
//! indexed read-only view used by every algorithm.

mod doc;
mod ops;
mod validate;
mod weight;

use std::collections::HashMap;
use std::ops::Range;
use std::path::Path;

pub use doc::{BoundaryVertex, Edge, End, HalfEdge, NetworkDoc, Role};
pub use ops::{
    blowup_vertices, is_perfectly_oriented, not_perfectly_oriented_at, prune_interior_sources_sinks,
    suppress_degree_two, with_edge_variables,
};
pub use validate::{validate, Violation};
pub use weight::Weight;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// A half-edge by index: edge number and which end.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Dart {
    pub edge: usize,
    pub end: End,
}

/// Sorted 1-based boundary positions of the sources.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SourceIndexSet(Vec<usize>);

impl SourceIndexSet {
    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.0.binary_search(&pos).is_ok()
    }

    /// Row index of a source in the boundary measurement matrix.
    pub fn row_of(&self, pos: usize) -> Option<usize> {
        self.0.binary_search(&pos).ok()
    }
}

/// A validated network. Vertex indices put the boundary first, so boundary
/// position `p` is vertex `p - 1`; interior vertices follow in document order.
#[derive(Clone, Debug)]
pub struct Network {
    doc: NetworkDoc,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    tail: Vec<usize>,
    head: Vec<usize>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    rotation: Vec<Vec<Dart>>,
    sources: SourceIndexSet,
}

impl Network {
    pub fn new(doc: NetworkDoc) -> Result<Network> {
        let violations = validate(&doc);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Ok(Network::index(doc))
    }

    /// Indexes a document that is valid by construction.
    pub(crate) fn trusted(doc: NetworkDoc) -> Network {
        debug_assert_eq!(validate(&doc), Vec::new());
        Network::index(doc)
    }

    fn index(doc: NetworkDoc) -> Network {
        let vertex_index: HashMap<String, usize> = doc
            .boundary
            .iter()
            .map(|b| b.id.clone())
            .chain(doc.interior.iter().cloned())
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let edge_index: HashMap<String, usize> = doc.edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        let nv = vertex_index.len();
        let mut out_adj = vec![Vec::new(); nv];
        let mut in_adj = vec![Vec::new(); nv];
        let mut tail = Vec::with_capacity(doc.edges.len());
        let mut head = Vec::with_capacity(doc.edges.len());
        for (i, e) in doc.edges.iter().enumerate() {
            let (t, h) = (vertex_index[&e.tail], vertex_index[&e.head]);
            out_adj[t].push(i);
            in_adj[h].push(i);
            tail.push(t);
            head.push(h);
        }
        let mut rotation = vec![Vec::new(); nv];
        if let Some(rot) = &doc.rotation {
            for (v, list) in rot {
                rotation[vertex_index[v]] = list
                    .iter()
                    .map(|h| Dart {
                        edge: edge_index[&h.edge],
                        end: h.end,
                    })
                    .collect();
            }
        }
        let sources = SourceIndexSet(
            doc.boundary
                .iter()
                .enumerate()
                .filter(|(_, b)| b.role == Role::Source)
                .map(|(i, _)| i + 1)
                .collect(),
        );
        Network {
            doc,
            vertex_index,
            edge_index,
            tail,
            head,
            out_adj,
            in_adj,
            rotation,
            sources,
        }
    }

    pub fn from_json(text: &str) -> Result<Network> {
        let doc: NetworkDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Network::new(doc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Network> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
        Network::from_json(&text)
    }

    /// Canonical pretty-printed document.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.doc).expect("network documents always serialize")
    }

    pub fn doc(&self) -> &NetworkDoc {
        &self.doc
    }

    pub fn into_doc(self) -> NetworkDoc {
        self.doc
    }

    pub fn name(&self) -> &str {
        &self.doc.name
    }

    pub fn is_planar(&self) -> bool {
        self.doc.planar
    }

    /// Number of boundary vertices.
    pub fn n(&self) -> usize {
        self.doc.boundary.len()
    }

    pub fn sources(&self) -> &SourceIndexSet {
        &self.sources
    }

    pub fn role(&self, pos: usize) -> Option<Role> {
        pos.checked_sub(1)
            .and_then(|i| self.doc.boundary.get(i))
            .map(|b| b.role)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_index.len()
    }

    pub fn edge_count(&self) -> usize {
        self.doc.edges.len()
    }

    pub fn interior_vertices(&self) -> Range<usize> {
        self.n()..self.vertex_count()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        v < self.n()
    }

    /// 1-based boundary position of a vertex.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.is_boundary(v).then_some(v + 1)
    }

    pub fn vertex_at(&self, pos: usize) -> usize {
        pos - 1
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        if v < self.n() {
            &self.doc.boundary[v].id
        } else {
            &self.doc.interior[v - self.n()]
        }
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.doc.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.doc.edges[e]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.doc.edges[e].id
    }

    pub fn edge_by_id(&self, id: &str) -> Option<usize> {
        self.edge_index.get(id).copied()
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tail[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.head[e]
    }

    pub fn endpoint(&self, d: Dart) -> usize {
        match d.end {
            End::Tail => self.tail[d.edge],
            End::Head => self.head[d.edge],
        }
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_adj[v].len() + self.in_adj[v].len()
    }

    pub fn has_rotation(&self) -> bool {
        self.doc.rotation.is_some()
    }

    /// Clockwise rotation at an interior vertex (empty without a rotation).
    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    pub fn weight(&self, e: usize) -> &Weight {
        &self.doc.edges[e].weight
    }

    pub fn weight_degree(&self, e: usize) -> u32 {
        self.doc.edges[e].weight.degree()
    }

    pub fn weight_poly(&self, e: usize) -> Result<Poly> {
        let edge = &self.doc.edges[e];
        edge.weight.to_poly(&edge.id)
    }

    /// Product of the weights of the given edges.
    pub fn weight_of<'a>(&self, edges: impl IntoIterator<Item = &'a usize>) -> Result<Poly> {
        let mut w = Weight::one();
        for &e in edges {
            w = w.mul(self.weight(e));
        }
        w.to_poly("product")
    }

    /// Fails unless position `i` exists and is a source.
    pub fn check_source(&self, i: usize) -> Result<()> {
        match self.role(i) {
            None => Err(Error::BadPosition(i)),
            Some(Role::Sink) => Err(Error::NotASource(i)),
            Some(Role::Source) => Ok(()),
        }
    }

    pub fn check_position(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.n() {
            Err(Error::BadPosition(j))
        } else {
            Ok(())
        }
    }

    /// Checks a column set: sorted, distinct, in range, of size |I|.
    pub fn check_columns(&self, cols: &[usize]) -> Result<()> {
        if cols.len() != self.sources.len() {
            return Err(Error::BadColumnSet(format!(
                "{} columns for {} sources",
                cols.len(),
                self.sources.len()
            )));
        }
        for w in cols.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::BadColumnSet("columns must be strictly increasing".into()));
            }
        }
        for &c in cols {
            self.check_position(c)
                .map_err(|_| Error::BadColumnSet(format!("column {c} out of range")))?;
        }
        Ok(())
    }

    /// Every k-subset of boundary positions.
    pub fn column_sets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for p in start..=n {
                if n - p + 1 < k - cur.len() {
                    break;
                }
                cur.push(p);
                rec(p + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(1, self.n(), self.sources.len(), &mut cur, &mut out);
        out
    }
}

#[cfg(test)]
mod tests;
