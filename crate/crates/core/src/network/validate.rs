use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use super::doc::{End, HalfEdge, NetworkDoc, Role};

/// A broken network invariant. Validation reports these as data.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    DuplicateVertex(String),
    DuplicateEdge(String),
    DanglingVertex {
        edge: String,
        vertex: String,
    },
    BoundaryDegree {
        vertex: String,
        degree: usize,
    },
    /// A source with an incoming edge, or a sink with an outgoing one.
    BoundaryRole {
        vertex: String,
    },
    MissingRotation(String),
    UnexpectedRotation,
    RotationUnknownVertex(String),
    RotationMismatch {
        vertex: String,
        detail: String,
    },
    /// The rotation system, closed up by the boundary circle, does not embed
    /// in the sphere.
    NotPlanar {
        genus: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            Violation::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            Violation::DanglingVertex { edge, vertex } => {
                write!(f, "edge {edge} refers to unknown vertex {vertex}")
            }
            Violation::BoundaryDegree { vertex, degree } => {
                write!(f, "boundary vertex {vertex} has degree {degree}")
            }
            Violation::BoundaryRole { vertex } => {
                write!(f, "edge at boundary vertex {vertex} points the wrong way for its role")
            }
            Violation::MissingRotation(v) if v.is_empty() => write!(f, "planar network without rotation"),
            Violation::MissingRotation(v) => write!(f, "no rotation given for interior vertex {v}"),
            Violation::UnexpectedRotation => write!(f, "non-planar network carries a rotation"),
            Violation::RotationUnknownVertex(v) => {
                write!(f, "rotation given for {v}, which is not an interior vertex")
            }
            Violation::RotationMismatch { vertex, detail } => {
                write!(f, "rotation at {vertex}: {detail}")
            }
            Violation::NotPlanar { genus } => {
                write!(f, "rotation system has genus {genus}, not a disk embedding")
            }
        }
    }
}

/// All violations of the network invariants, in a deterministic order.
pub fn validate(doc: &NetworkDoc) -> Vec<Violation> {
    let mut out = Vec::new();

    let mut vertices: HashMap<&str, Option<Role>> = HashMap::new();
    for b in &doc.boundary {
        if vertices.insert(&b.id, Some(b.role)).is_some() {
            out.push(Violation::DuplicateVertex(b.id.clone()));
        }
    }
    for v in &doc.interior {
        if vertices.insert(v, None).is_some() {
            out.push(Violation::DuplicateVertex(v.clone()));
        }
    }

    let mut edge_ids = HashSet::new();
    let mut dangling = false;
    let mut boundary_degree: HashMap<&str, usize> = HashMap::new();
    for e in &doc.edges {
        if !edge_ids.insert(e.id.as_str()) {
            out.push(Violation::DuplicateEdge(e.id.clone()));
        }
        for (vertex, end) in [(&e.tail, End::Tail), (&e.head, End::Head)] {
            match vertices.get(vertex.as_str()) {
                None => {
                    dangling = true;
                    out.push(Violation::DanglingVertex {
                        edge: e.id.clone(),
                        vertex: vertex.clone(),
                    });
                }
                Some(Some(role)) => {
                    *boundary_degree.entry(vertex).or_default() += 1;
                    let wrong = match role {
                        Role::Source => end == End::Head,
                        Role::Sink => end == End::Tail,
                    };
                    if wrong {
                        out.push(Violation::BoundaryRole { vertex: vertex.clone() });
                    }
                }
                Some(None) => {}
            }
        }
    }
    for b in &doc.boundary {
        let degree = boundary_degree.get(b.id.as_str()).copied().unwrap_or(0);
        if degree >= 2 {
            out.push(Violation::BoundaryDegree {
                vertex: b.id.clone(),
                degree,
            });
        }
    }

    match (&doc.rotation, doc.planar) {
        (None, false) => {}
        (Some(_), false) => out.push(Violation::UnexpectedRotation),
        (None, true) => out.push(Violation::MissingRotation(String::new())),
        (Some(rotation), true) => {
            let before = out.len();
            check_rotation_incidence(doc, &mut out);
            let clean = out.len() == before
                && !dangling
                && out
                    .iter()
                    .all(|v| !matches!(v, Violation::DuplicateVertex(_) | Violation::DuplicateEdge(_)));
            if clean {
                let genus = embedding_genus(doc, rotation);
                if genus != 0 {
                    out.push(Violation::NotPlanar { genus });
                }
            }
        }
    }
    out
}

fn check_rotation_incidence(doc: &NetworkDoc, out: &mut Vec<Violation>) {
    let rotation = doc.rotation.as_ref().expect("planar rotation");
    let interior: HashSet<&str> = doc.interior.iter().map(String::as_str).collect();
    for v in rotation.keys() {
        if !interior.contains(v.as_str()) {
            out.push(Violation::RotationUnknownVertex(v.clone()));
        }
    }
    let mut expected: HashMap<&str, Vec<(&str, End)>> = HashMap::new();
    for e in &doc.edges {
        expected.entry(&e.tail).or_default().push((&e.id, End::Tail));
        expected.entry(&e.head).or_default().push((&e.id, End::Head));
    }
    for v in &doc.interior {
        let mut want = expected.remove(v.as_str()).unwrap_or_default();
        let Some(listed) = rotation.get(v) else {
            if want.is_empty() {
                // An isolated vertex needs no rotation.
                continue;
            }
            out.push(Violation::MissingRotation(v.clone()));
            continue;
        };
        let mut have: Vec<(&str, End)> = listed.iter().map(|h| (h.edge.as_str(), h.end)).collect();
        want.sort();
        have.sort();
        if want != have {
            let missing: Vec<String> = want
                .iter()
                .filter(|h| !have.contains(h))
                .map(|(e, end)| format!("{e}:{end:?}"))
                .collect();
            let extra: Vec<String> = have
                .iter()
                .filter(|h| !want.contains(h))
                .map(|(e, end)| format!("{e}:{end:?}"))
                .collect();
            let detail = if missing.is_empty() && extra.is_empty() {
                "repeated half-edge".to_owned()
            } else {
                format!("missing [{}], unexpected [{}]", missing.join(", "), extra.join(", "))
            };
            out.push(Violation::RotationMismatch {
                vertex: v.clone(),
                detail,
            });
        }
    }
}

/// Genus of the combinatorial map formed by the rotation system plus the
/// boundary circle b1 → b2 → … → bn → b1 drawn around everything.
fn embedding_genus(doc: &NetworkDoc, rotation: &BTreeMap<String, Vec<HalfEdge>>) -> usize {
    let n = doc.boundary.len();
    let m = doc.edges.len();
    let vertex_index: HashMap<&str, usize> = doc
        .boundary
        .iter()
        .map(|b| b.id.as_str())
        .chain(doc.interior.iter().map(String::as_str))
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let edge_index: HashMap<&str, usize> = doc.edges.iter().enumerate().map(|(i, e)| (e.id.as_str(), i)).collect();
    let dart = |edge: usize, end: End| 2 * edge + usize::from(end == End::Head);

    // Arcs of the boundary circle follow the edges in dart numbering: arc p
    // runs from b_p to b_{p+1}.
    let arcs = n;
    let total = 2 * (m + arcs);
    let mut succ = vec![usize::MAX; total];
    fn cycle_from(ring: &[usize], succ: &mut [usize]) {
        for (k, &d) in ring.iter().enumerate() {
            succ[d] = ring[(k + 1) % ring.len()];
        }
    }

    let mut boundary_edge: Vec<Option<usize>> = vec![None; n];
    for (i, e) in doc.edges.iter().enumerate() {
        for (v, end) in [(&e.tail, End::Tail), (&e.head, End::Head)] {
            let idx = vertex_index[v.as_str()];
            if idx < n {
                boundary_edge[idx] = Some(dart(i, end));
            }
        }
    }
    for p in 0..n {
        let out_arc = dart(m + p, End::Tail);
        let in_arc = dart(m + (p + n - 1) % n, End::Head);
        let mut ring = vec![out_arc];
        ring.extend(boundary_edge[p]);
        ring.push(in_arc);
        cycle_from(&ring, &mut succ);
    }
    for list in rotation.values() {
        let ring: Vec<usize> = list.iter().map(|h| dart(edge_index[h.edge.as_str()], h.end)).collect();
        if !ring.is_empty() {
            cycle_from(&ring, &mut succ);
        }
    }

    let endpoint = |d: usize| -> usize {
        let (edge, end) = (d / 2, if d % 2 == 0 { End::Tail } else { End::Head });
        if edge < m {
            let e = &doc.edges[edge];
            vertex_index[if end == End::Tail {
                e.tail.as_str()
            } else {
                e.head.as_str()
            }]
        } else {
            let p = edge - m;
            if end == End::Tail {
                p
            } else {
                (p + 1) % n
            }
        }
    };

    let vcount = vertex_index.len();
    let mut parent: Vec<usize> = (0..vcount).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for edge in 0..(m + arcs) {
        let a = find(&mut parent, endpoint(2 * edge));
        let b = find(&mut parent, endpoint(2 * edge + 1));
        parent[a] = b;
    }
    let components = (0..vcount).filter(|&v| find(&mut parent, v) == v).count();

    let mut seen = vec![false; total];
    let mut faces = 0usize;
    for start in 0..total {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = succ[d ^ 1];
        }
    }
    let mut has_dart = vec![false; vcount];
    for d in 0..total {
        has_dart[endpoint(d)] = true;
    }
    faces += has_dart.iter().filter(|&&x| !x).count();

    let euler = vcount as i64 - (m + arcs) as i64 + faces as i64;
    let deficit = 2 * components as i64 - euler;
    (deficit.max(0) / 2) as usize
}
