//! Structural predicates and simplifications.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::weight::is_ident;
use super::{End, HalfEdge, Network, NetworkDoc, Weight};
use crate::error::{Error, Result};

/// First interior vertex (document order) that has neither exactly one
/// incoming nor exactly one outgoing edge.
pub fn not_perfectly_oriented_at(n: &Network) -> Option<usize> {
    n.interior_vertices()
        .find(|&v| n.in_edges(v).len() != 1 && n.out_edges(v).len() != 1)
}

pub fn is_perfectly_oriented(n: &Network) -> bool {
    not_perfectly_oriented_at(n).is_none()
}

/// Interior vertices whose clockwise half-edge cycle switches orientation at
/// least four times.
pub fn blowup_vertices(n: &Network) -> Result<BTreeSet<String>> {
    if !n.has_rotation() {
        return Err(Error::MissingRotation);
    }
    Ok(n.interior_vertices()
        .filter(|&v| orientation_switches(n.rotation(v).iter().map(|d| d.end)) >= 4)
        .map(|v| n.vertex_id(v).to_owned())
        .collect())
}

pub(crate) fn orientation_switches(ends: impl Iterator<Item = End>) -> usize {
    let ends: Vec<End> = ends.collect();
    (0..ends.len())
        .filter(|&k| ends[k] != ends[(k + 1) % ends.len()])
        .count()
}

/// Deletes interior sources and sinks, with their edges, until none remain.
pub fn prune_interior_sources_sinks(n: &Network) -> Network {
    let doc = n.doc();
    let mut dead_vertices: HashSet<&str> = HashSet::new();
    let mut dead_edges: HashSet<&str> = HashSet::new();
    loop {
        let mut indeg: HashMap<&str, usize> = HashMap::new();
        let mut outdeg: HashMap<&str, usize> = HashMap::new();
        for e in doc.edges.iter().filter(|e| !dead_edges.contains(e.id.as_str())) {
            *outdeg.entry(&e.tail).or_default() += 1;
            *indeg.entry(&e.head).or_default() += 1;
        }
        let newly: Vec<&str> = doc
            .interior
            .iter()
            .map(String::as_str)
            .filter(|v| !dead_vertices.contains(v))
            .filter(|v| !indeg.contains_key(v) || !outdeg.contains_key(v))
            .collect();
        if newly.is_empty() {
            break;
        }
        dead_vertices.extend(newly);
        for e in &doc.edges {
            if dead_vertices.contains(e.tail.as_str()) || dead_vertices.contains(e.head.as_str()) {
                dead_edges.insert(&e.id);
            }
        }
    }
    let mut out = doc.clone();
    out.interior.retain(|v| !dead_vertices.contains(v.as_str()));
    out.edges.retain(|e| !dead_edges.contains(e.id.as_str()));
    if let Some(rot) = &mut out.rotation {
        rot.retain(|v, _| !dead_vertices.contains(v.as_str()));
        for list in rot.values_mut() {
            list.retain(|h| !dead_edges.contains(h.edge.as_str()));
        }
        rot.retain(|_, list| !list.is_empty());
    }
    Network::trusted(out)
}

/// Glues the two edges at every interior vertex with one incoming and one
/// outgoing edge. The glued edge keeps the incoming edge's id and carries the
/// product weight.
pub fn suppress_degree_two(n: &Network) -> Result<Network> {
    let mut doc = n.doc().clone();
    while let Some(pos) = doc.interior.iter().position(|v| is_degree_two(&doc, v)) {
        let v = doc.interior[pos].clone();
        let e_in = doc.edges.iter().position(|e| e.head == v).expect("one incoming edge");
        let e_out = doc.edges.iter().position(|e| e.tail == v).expect("one outgoing edge");
        if e_in == e_out {
            return Err(Error::Degree2SelfLoop(v));
        }
        let out_edge = doc.edges[e_out].clone();
        let glued = &mut doc.edges[e_in];
        glued.head = out_edge.head.clone();
        glued.weight = glued.weight.mul(&out_edge.weight);
        let glued_id = glued.id.clone();
        doc.edges.remove(e_out);
        doc.interior.remove(pos);
        if let Some(rot) = &mut doc.rotation {
            rot.remove(&v);
            if let Some(list) = rot.get_mut(&out_edge.head) {
                for h in list.iter_mut() {
                    if h.edge == out_edge.id && h.end == End::Head {
                        *h = HalfEdge::head(glued_id.clone());
                    }
                }
            }
        }
    }
    Ok(Network::trusted(doc))
}

fn is_degree_two(doc: &NetworkDoc, v: &str) -> bool {
    let ins = doc.edges.iter().filter(|e| e.head == v).count();
    let outs = doc.edges.iter().filter(|e| e.tail == v).count();
    ins == 1 && outs == 1
}

/// Replaces every weight by a fresh variable named after its edge (or
/// `x<index>` when the id is not a valid variable name).
pub fn with_edge_variables(n: &Network) -> Network {
    let mut doc = n.doc().clone();
    for (i, e) in doc.edges.iter_mut().enumerate() {
        let name = if is_ident(&e.id) { e.id.clone() } else { format!("x{i}") };
        e.weight = Weight::var(&name);
    }
    Network::trusted(doc)
}
