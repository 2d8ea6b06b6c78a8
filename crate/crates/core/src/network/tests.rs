use super::*;
use crate::samples;

fn roles(spec: &str) -> Vec<BoundaryVertex> {
    spec.split_whitespace()
        .map(|s| {
            let (id, role) = s.split_once(':').unwrap();
            BoundaryVertex {
                id: id.to_owned(),
                role: if role == "source" { Role::Source } else { Role::Sink },
            }
        })
        .collect()
}

fn nonplanar(boundary: &str, interior: &[&str], edges: &[(&str, &str, &str)]) -> NetworkDoc {
    let mut doc = NetworkDoc {
        name: "t".into(),
        planar: false,
        boundary: roles(boundary),
        interior: interior.iter().map(|s| s.to_string()).collect(),
        ..NetworkDoc::default()
    };
    for &(id, t, h) in edges {
        doc.edge(id, t, h, Weight::var(id));
    }
    doc
}

#[test]
fn fig1_shape() {
    let n = samples::fig1();
    assert_eq!(n.n(), 5);
    assert_eq!(n.sources().positions(), &[1, 4]);
    assert_eq!(n.edge_count(), 22);
    assert!(validate(n.doc()).is_empty());
    assert!(n.is_planar());
}

#[test]
fn canonical_documents_round_trip() {
    for text in [samples::FIG1_JSON, samples::FIG6_JSON, samples::X_JSON] {
        let n = Network::from_json(text).unwrap();
        assert_eq!(n.to_json() + "\n", text);
        let again = Network::from_json(&n.to_json()).unwrap();
        assert_eq!(again.doc(), n.doc());
    }
}

#[test]
fn empty_network_is_valid() {
    let doc = nonplanar("b1:source b2:sink", &[], &[]);
    assert!(validate(&doc).is_empty());
    let mut planar = doc.clone();
    planar.planar = true;
    planar.rotation = Some(Default::default());
    assert!(validate(&planar).is_empty());
}

#[test]
fn boundary_vertex_with_two_edges() {
    let doc = nonplanar(
        "b1:source b2:sink",
        &["v"],
        &[("e1", "b1", "v"), ("e2", "b1", "v"), ("e3", "v", "b2")],
    );
    let v = validate(&doc);
    assert!(v.contains(&Violation::BoundaryDegree {
        vertex: "b1".into(),
        degree: 2
    }));
    assert!(matches!(Network::new(doc), Err(Error::Invalid(_))));
}

#[test]
fn unknown_vertex_is_dangling() {
    let doc = nonplanar("b1:source b2:sink", &[], &[("e", "b1", "nowhere")]);
    assert_eq!(
        validate(&doc),
        vec![Violation::DanglingVertex {
            edge: "e".into(),
            vertex: "nowhere".into()
        }]
    );
}

#[test]
fn duplicates_and_roles() {
    let doc = nonplanar("b1:source b1:sink", &[], &[("e", "b1", "b1")]);
    let v = validate(&doc);
    assert!(v.contains(&Violation::DuplicateVertex("b1".into())));
    let doc = nonplanar("b1:sink b2:source", &[], &[("e", "b1", "b2"), ("e", "b2", "b1")]);
    let v = validate(&doc);
    assert!(v.contains(&Violation::DuplicateEdge("e".into())));
    assert!(v.contains(&Violation::BoundaryRole { vertex: "b1".into() }));
}

#[test]
fn malformed_json() {
    assert!(matches!(Network::from_json("{"), Err(Error::Malformed(_))));
    assert!(matches!(
        Network::from_json(r#"{"planar": false, "boundary": [], "bogus": 1}"#),
        Err(Error::Malformed(_))
    ));
}

#[test]
fn rotation_must_match_incidence() {
    let mut doc = samples::fig1().into_doc();
    let rot = doc.rotation.as_mut().unwrap();
    rot.get_mut("v1").unwrap().pop();
    let v = validate(&doc);
    assert!(matches!(&v[..], [Violation::RotationMismatch { vertex, .. }] if vertex == "v1"));

    let mut doc = samples::fig6().into_doc();
    doc.rotation = Some(Default::default());
    assert!(validate(&doc).contains(&Violation::UnexpectedRotation));
}

#[test]
fn swapped_rotation_at_one_vertex_is_not_planar() {
    let mut doc = samples::fig1().into_doc();
    doc.rotation.as_mut().unwrap().get_mut("v6").unwrap().swap(0, 1);
    assert!(matches!(&validate(&doc)[..], [Violation::NotPlanar { genus: 1 }]));
}

#[test]
fn fig6_admits_no_planar_rotation() {
    let base = samples::fig6().into_doc();
    assert!(validate(&base).is_empty());
    let mut incident: Vec<(String, Vec<HalfEdge>)> = Vec::new();
    for v in &base.interior {
        let mut hs = Vec::new();
        for e in &base.edges {
            if &e.tail == v {
                hs.push(HalfEdge::tail(e.id.clone()));
            }
            if &e.head == v {
                hs.push(HalfEdge::head(e.id.clone()));
            }
        }
        assert_eq!(hs.len(), 3);
        incident.push((v.clone(), hs));
    }
    // Each trivalent vertex has two cyclic orders; every choice fails.
    for mask in 0..16u32 {
        let mut doc = base.clone();
        doc.planar = true;
        let mut rot = std::collections::BTreeMap::new();
        for (k, (v, hs)) in incident.iter().enumerate() {
            let mut hs = hs.clone();
            if mask >> k & 1 == 1 {
                hs.swap(1, 2);
            }
            rot.insert(v.clone(), hs);
        }
        doc.rotation = Some(rot);
        let violations = validate(&doc);
        assert!(
            matches!(&violations[..], [Violation::NotPlanar { .. }]),
            "mask {mask}: {violations:?}"
        );
    }
}

#[test]
fn perfect_orientation() {
    assert!(is_perfectly_oriented(&samples::fig1()));
    assert!(is_perfectly_oriented(&samples::fig6()));
    let x = samples::network_x();
    assert!(!is_perfectly_oriented(&x));
    assert_eq!(
        not_perfectly_oriented_at(&x).map(|v| x.vertex_id(v).to_owned()),
        Some("v".into())
    );
}

use samples::star;

#[test]
fn blowup_detection() {
    assert!(blowup_vertices(&samples::fig1()).unwrap().is_empty());
    assert_eq!(
        blowup_vertices(&samples::network_x())
            .unwrap()
            .into_iter()
            .collect::<Vec<_>>(),
        vec!["v".to_owned()]
    );
    use End::{Head as In, Tail as Out};
    assert!(blowup_vertices(&star(&[In, In, Out, Out])).unwrap().is_empty());
    assert_eq!(blowup_vertices(&star(&[In, Out, In, Out, In, Out])).unwrap().len(), 1);
    assert!(matches!(blowup_vertices(&samples::fig6()), Err(Error::MissingRotation)));
}

#[test]
fn pruning() {
    let doc = nonplanar(
        "b1:source b2:sink",
        &["lonely", "a", "dead1", "dead2"],
        &[
            ("e1", "b1", "a"),
            ("e2", "a", "b2"),
            ("e3", "a", "dead1"),
            ("e4", "dead1", "dead2"),
        ],
    );
    let n = Network::new(doc).unwrap();
    let pruned = prune_interior_sources_sinks(&n);
    assert_eq!(pruned.doc().interior, vec!["a".to_owned()]);
    let ids: Vec<&str> = pruned.edges().iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids, ["e1", "e2"]);

    let fig1 = samples::fig1();
    assert_eq!(prune_interior_sources_sinks(&fig1).doc(), fig1.doc());
}

#[test]
fn suppression_glues_weights() {
    let n = Network::new(nonplanar(
        "b1:source b2:sink",
        &["v"],
        &[("u", "b1", "v"), ("w", "v", "b2")],
    ))
    .unwrap();
    let s = suppress_degree_two(&n).unwrap();
    assert_eq!(s.edge_count(), 1);
    let e = s.edge(0);
    assert_eq!((e.tail.as_str(), e.head.as_str()), ("b1", "b2"));
    assert_eq!(e.weight.to_string(), "u*w");

    let chain = Network::new(nonplanar(
        "b1:source b2:sink",
        &["v1", "v2", "v3"],
        &[
            ("p", "b1", "v1"),
            ("q", "v1", "v2"),
            ("r", "v2", "v3"),
            ("s", "v3", "b2"),
        ],
    ))
    .unwrap();
    let s = suppress_degree_two(&chain).unwrap();
    assert_eq!(s.edge_count(), 1);
    assert_eq!(s.edge(0).weight.to_string(), "p*q*r*s");

    let fig1 = samples::fig1();
    assert_eq!(suppress_degree_two(&fig1).unwrap().doc(), fig1.doc());
}

#[test]
fn suppression_rejects_degree_two_loop() {
    let n = Network::new(nonplanar("b1:source", &["v"], &[("l", "v", "v")])).unwrap();
    assert!(matches!(suppress_degree_two(&n), Err(Error::Degree2SelfLoop(v)) if v == "v"));
}

#[test]
fn suppression_keeps_rotation_consistent() {
    // b1 -> v -> w -> b2 with w trivalent (an extra edge w -> b3).
    let mut doc = nonplanar(
        "b1:source b2:sink b3:sink",
        &["v", "w"],
        &[("a", "b1", "v"), ("b", "v", "w"), ("c", "w", "b2"), ("d", "w", "b3")],
    );
    doc.planar = true;
    doc.rotation = Some(
        [
            ("v".to_owned(), vec![HalfEdge::head("a"), HalfEdge::tail("b")]),
            (
                "w".to_owned(),
                vec![HalfEdge::head("b"), HalfEdge::tail("c"), HalfEdge::tail("d")],
            ),
        ]
        .into_iter()
        .collect(),
    );
    let n = Network::new(doc).unwrap();
    let s = suppress_degree_two(&n).unwrap();
    assert!(validate(s.doc()).is_empty());
    assert_eq!(s.edge(0).weight.to_string(), "a*b");
    assert_eq!(s.doc().rotation.as_ref().unwrap()["w"][0], HalfEdge::head("a"));
}

#[test]
fn column_sets_enumerate_k_subsets() {
    let n = samples::fig1();
    let sets = n.column_sets();
    assert_eq!(sets.len(), 10);
    assert_eq!(sets[0], vec![1, 2]);
    assert!(n.check_columns(&[1, 5]).is_ok());
    assert!(n.check_columns(&[5, 1]).is_err());
    assert!(n.check_columns(&[1, 6]).is_err());
    assert!(n.check_columns(&[1]).is_err());
}
