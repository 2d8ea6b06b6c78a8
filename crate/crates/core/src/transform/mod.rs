//! Rewriting a planar network into a perfectly oriented one with adjusted
//! weights, and the contraction map that sends flows of the rewritten
//! network back to alternating flows of the original.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::{alternating_flow, AlternatingFlow};
use crate::network::{End, HalfEdge, Network, NetworkDoc, Weight};

/// What [`perfect_orient`] added, so that its output can be contracted back.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// Connectors and cycle edges, all of weight 1 before doubling.
    pub new_edges: BTreeSet<String>,
    /// Edges entering a blown-up vertex. May include connectors.
    pub doubled_edges: BTreeSet<String>,
    /// Every new vertex, mapped to the original vertex it was split from.
    pub vertex_origin: BTreeMap<String, String>,
    /// Blown-up vertex of the original network → its cycle edges, in
    /// clockwise order.
    pub cycles: BTreeMap<String, Vec<String>>,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.new_edges.is_empty() && self.doubled_edges.is_empty() && self.vertex_origin.is_empty()
    }

    /// The original vertex a vertex of the rewritten network lies over.
    pub fn origin<'a>(&'a self, v: &'a str) -> &'a str {
        self.vertex_origin.get(v).map_or(v, String::as_str)
    }
}

struct Rewriter {
    doc: NetworkDoc,
    vertex_ids: HashSet<String>,
    edge_ids: HashSet<String>,
    trace: ReductionTrace,
}

impl Rewriter {
    fn fresh(taken: &mut HashSet<String>, stem: &str, tag: char, from: usize) -> String {
        let mut c = from;
        loop {
            let id = format!("{stem}_{tag}{c}");
            if taken.insert(id.clone()) {
                return id;
            }
            c += 1;
        }
    }

    fn rotation(&mut self) -> &mut BTreeMap<String, Vec<HalfEdge>> {
        self.doc.rotation.as_mut().expect("checked planar")
    }

    fn attach(&mut self, h: &HalfEdge, v: &str) {
        let e = self
            .doc
            .edges
            .iter_mut()
            .find(|e| e.id == h.edge)
            .expect("rotation names a known edge");
        match h.end {
            End::Tail => e.tail = v.to_owned(),
            End::Head => e.head = v.to_owned(),
        }
    }

    fn origin_of(&self, v: &str) -> String {
        self.trace.origin(v).to_owned()
    }

    /// The lexicographically first (vertex, position) of an adjacent pair
    /// of half-edges with the same orientation at a vertex of degree > 3.
    fn pair_to_pull(&mut self) -> Option<(String, usize)> {
        self.rotation().iter().find_map(|(v, rot)| {
            let d = rot.len();
            if d <= 3 {
                return None;
            }
            (0..d)
                .find(|&k| rot[k].end == rot[(k + 1) % d].end)
                .map(|k| (v.clone(), k))
        })
    }

    fn pull(&mut self, v: &str, k: usize, counter: usize) {
        let mut rot = self.rotation()[v].clone();
        let d = rot.len();
        let (h1, h2) = (rot[k].clone(), rot[(k + 1) % d].clone());
        let w = Self::fresh(&mut self.vertex_ids, v, 'p', counter);
        let e = Self::fresh(&mut self.edge_ids, v, 'e', counter);
        // An incoming pair is fed by a connector into v; an outgoing pair
        // is fed by a connector out of v.
        let (tail, head, at_v, at_w) = match h1.end {
            End::Head => (w.as_str(), v, HalfEdge::head(&e), HalfEdge::tail(&e)),
            End::Tail => (v, w.as_str(), HalfEdge::tail(&e), HalfEdge::head(&e)),
        };
        let (tail, head) = (tail.to_owned(), head.to_owned());
        if k + 1 < d {
            rot.splice(k..k + 2, [at_v]);
        } else {
            rot.pop();
            rot[0] = at_v;
        }
        self.attach(&h1, &w);
        self.attach(&h2, &w);
        self.doc.edge(&e, &tail, &head, Weight::one());
        self.doc.interior.push(w.clone());
        let origin = self.origin_of(v);
        let r = self.rotation();
        r.insert(v.to_owned(), rot);
        r.insert(w.clone(), vec![h1, h2, at_w]);
        self.trace.new_edges.insert(e);
        self.trace.vertex_origin.insert(w, origin);
    }

    fn blow_up(&mut self, v: &str) {
        let rot = self.rotation().remove(v).expect("vertex has a rotation");
        let d = rot.len();
        let cycle: Vec<String> = (0..d).map(|k| Self::fresh(&mut self.vertex_ids, v, 'c', k)).collect();
        let arcs: Vec<String> = (0..d).map(|k| Self::fresh(&mut self.edge_ids, v, 'k', k)).collect();
        let two = BigRational::from_integer(BigInt::from(2));
        for (k, h) in rot.iter().enumerate() {
            self.attach(h, &cycle[k]);
            if h.end == End::Head {
                let e = self.doc.edges.iter_mut().find(|e| e.id == h.edge).expect("known edge");
                e.weight = e.weight.scale(&two);
                self.trace.doubled_edges.insert(h.edge.clone());
            }
        }
        for k in 0..d {
            self.doc.edge(&arcs[k], &cycle[k], &cycle[(k + 1) % d], Weight::one());
        }
        let origin = self.origin_of(v);
        for k in 0..d {
            let list = vec![
                rot[k].clone(),
                HalfEdge::tail(&arcs[k]),
                HalfEdge::head(&arcs[(k + d - 1) % d]),
            ];
            self.rotation().insert(cycle[k].clone(), list);
            self.trace.vertex_origin.insert(cycle[k].clone(), origin.clone());
        }
        self.doc.interior.retain(|u| u != v);
        self.doc.interior.extend(cycle);
        self.trace.new_edges.extend(arcs.iter().cloned());
        self.trace.cycles.insert(origin, arcs);
    }
}

fn require_reduced(n: &Network) -> Result<()> {
    for v in n.interior_vertices() {
        let (ins, outs) = (n.in_edges(v).len(), n.out_edges(v).len());
        if ins == 0 || outs == 0 {
            return Err(Error::NotReduced(format!(
                "{} is an interior source or sink",
                n.vertex_id(v)
            )));
        }
        if ins + outs == 2 {
            return Err(Error::NotReduced(format!("{} has degree 2", n.vertex_id(v))));
        }
    }
    Ok(())
}

/// Pulls adjacent same-orientation half-edge pairs off every vertex of
/// degree above 3 onto new trivalent vertices, then replaces each remaining
/// alternating vertex of degree at least 4 by a clockwise cycle. Incoming
/// weights at a blown-up vertex are doubled; new edges have weight 1.
pub fn perfect_orient(n: &Network) -> Result<(Network, ReductionTrace)> {
    if !n.has_rotation() {
        return Err(Error::MissingRotation);
    }
    require_reduced(n)?;
    let doc = n.doc().clone();
    let mut rw = Rewriter {
        vertex_ids: doc
            .boundary
            .iter()
            .map(|b| b.id.clone())
            .chain(doc.interior.iter().cloned())
            .collect(),
        edge_ids: doc.edges.iter().map(|e| e.id.clone()).collect(),
        doc,
        trace: ReductionTrace::default(),
    };
    let mut counter = 0;
    while let Some((v, k)) = rw.pair_to_pull() {
        rw.pull(&v, k, counter);
        counter += 1;
    }
    let high: Vec<String> = rw
        .rotation()
        .iter()
        .filter(|(_, rot)| rot.len() >= 4)
        .map(|(v, _)| v.clone())
        .collect();
    for v in high {
        rw.blow_up(&v);
    }
    Ok((Network::new(rw.doc)?, rw.trace))
}

/// Maps a flow `F′` of the rewritten network `reduced` (edge indices of
/// `reduced`) to the alternating flow `F = F′ ∩ E(G)` of `original`, together
/// with the blown-up vertices whose whole cycle lies in `F′` while no edge of
/// `F` touches them.
pub fn contract_flow(
    original: &Network,
    reduced: &Network,
    trace: &ReductionTrace,
    flow: &[usize],
) -> Result<(AlternatingFlow, BTreeSet<String>)> {
    let ids: HashSet<&str> = flow.iter().map(|&e| reduced.edge_id(e)).collect();
    let kept: Vec<usize> = flow
        .iter()
        .map(|&e| reduced.edge_id(e))
        .filter(|id| !trace.new_edges.contains(*id))
        .map(|id| original.edge_by_id(id).expect("original edges survive the rewrite"))
        .collect();
    let f = alternating_flow(original, &kept)?;
    let mut touched = HashSet::new();
    for &e in &f.edges {
        touched.insert(original.tail(e));
        touched.insert(original.head(e));
    }
    let a = trace
        .cycles
        .iter()
        .filter(|(v, arcs)| {
            let v = original.vertex_by_id(v).expect("blown vertex is original");
            !touched.contains(&v) && arcs.iter().all(|e| ids.contains(e.as_str()))
        })
        .map(|(v, _)| v.clone())
        .collect();
    Ok((f, a))
}

/// Carries a positive rational weight assignment on the original edges to
/// the rewritten network: new edges get 1, then edges entering a blown-up
/// vertex are doubled.
pub fn weight_transport(
    trace: &ReductionTrace,
    alpha: &BTreeMap<String, BigRational>,
) -> Result<BTreeMap<String, BigRational>> {
    if let Some((e, _)) = alpha.iter().find(|(_, w)| !w.is_positive()) {
        return Err(Error::NonPositiveWeight(e.clone()));
    }
    let mut out = alpha.clone();
    for e in &trace.new_edges {
        out.insert(e.clone(), BigRational::one());
    }
    let two = BigRational::from_integer(BigInt::from(2));
    for e in &trace.doubled_edges {
        let w = out.get(e).cloned().ok_or_else(|| Error::MissingEdgeValue(e.clone()))?;
        out.insert(e.clone(), w * &two);
    }
    Ok(out)
}
