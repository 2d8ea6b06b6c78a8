//! The networks shipped in `networks/`, embedded at compile time.

use crate::network::{BoundaryVertex, End, HalfEdge, Network, NetworkDoc, Role, Weight};

pub const FIG1_JSON: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../networks/fig1.json"));
pub const FIG6_JSON: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../networks/fig6.json"));
pub const X_JSON: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../networks/x.json"));

/// The planar running example: five boundary vertices, sources at 1 and 4.
pub fn fig1() -> Network {
    Network::from_json(FIG1_JSON).expect("fig1.json is valid")
}

/// The non-planar four-cycle example.
pub fn fig6() -> Network {
    Network::from_json(FIG6_JSON).expect("fig6.json is valid")
}

/// One alternating 4-valent interior vertex joined to four boundary vertices.
pub fn network_x() -> Network {
    Network::from_json(X_JSON).expect("x.json is valid")
}

/// A single interior vertex `v` joined to boundary vertices `b1..bd` by
/// edges `e1..ed` weighted by their ids. `ends[k]` is the end of `e{k+1}` at
/// `v`, listed clockwise.
pub fn star(ends: &[End]) -> Network {
    let mut doc = NetworkDoc {
        name: "star".into(),
        planar: true,
        interior: vec!["v".into()],
        ..NetworkDoc::default()
    };
    let mut list = Vec::new();
    for (k, end) in ends.iter().enumerate() {
        let b = format!("b{}", k + 1);
        let e = format!("e{}", k + 1);
        let role = if *end == End::Head { Role::Source } else { Role::Sink };
        doc.boundary.push(BoundaryVertex { id: b.clone(), role });
        match end {
            End::Head => doc.edge(&e, &b, "v", Weight::var(&e)),
            End::Tail => doc.edge(&e, "v", &b, Weight::var(&e)),
        };
        list.push(HalfEdge::new(e, *end));
    }
    doc.rotation = Some([("v".to_owned(), list)].into_iter().collect());
    Network::new(doc).expect("a star is valid")
}
