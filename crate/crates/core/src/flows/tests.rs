use super::*;
use crate::network::{Network, NetworkDoc, Weight};
use crate::poly::{series_div, Poly, RationalFn};
use crate::samples;
use crate::walks::minor_series;

fn p(s: &str) -> Poly {
    s.parse().unwrap()
}

fn r(s: &str) -> RationalFn {
    s.parse().unwrap()
}

const W: &str = "w1*w2*w3*w4";
const Y: &str = "y1*y2*y3*y4";
const Z: &str = "z1*z2*z3*z4";
const T: &str = "f*y2*y3*y4*g*w4*w1*w2";

#[test]
fn fig1_flows_to_one_five() {
    let n = samples::fig1();
    let flows = enumerate_flows(&n, &[1, 5]).unwrap();
    assert_eq!(flows.len(), 2);
    let sets: Vec<Vec<&str>> = flows.iter().map(|f| f.edge_ids(&n)).collect();
    assert_eq!(sets[0], ["a4", "a5", "f", "w2", "y2"]);
    assert_eq!(sets[1], ["a4", "a5", "f", "w2", "y2", "z1", "z2", "z3", "z4"]);
    assert!(flows.iter().all(|f| f.walks[0].is_empty() && f.destination() == [1, 5]));
}

#[test]
fn fig1_cycles_and_disjoint_pairs() {
    let n = samples::fig1();
    let cycles = simple_cycles(&n);
    let monomial = |c: &Cycle| {
        let mut ids: Vec<&str> = c.edges.iter().map(|&e| n.edge_id(e)).collect();
        ids.sort();
        ids.join("*")
    };
    let mut names: Vec<(String, &Cycle)> = cycles.iter().map(|c| (monomial(c), c)).collect();
    names.sort_by(|a, b| a.0.cmp(&b.0));
    assert_eq!(names.len(), 4);
    let find = |m: &str| {
        let target = p(m);
        names
            .iter()
            .find(|(name, _)| p(name) == target)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| panic!("cycle {m}"))
    };
    let (w, y, z, t) = (find(W), find(Y), find(Z), find(T));
    let disjoint = |a: &Cycle, b: &Cycle| a.vertices.is_disjoint(&b.vertices);
    assert!(disjoint(w, y) && disjoint(w, z) && disjoint(y, z) && disjoint(z, t));
    assert!(!disjoint(w, t) && !disjoint(y, t));
}

#[test]
fn fig1_conservative_flows() {
    let n = samples::fig1();
    assert_eq!(conservative_flows(&n).unwrap().len(), 10);
    let expected = p(&format!(
        "1 + {W} + {Y} + {Z} + {T} + {W}*{Z} + {W}*{Y} + {Y}*{Z} + {W}*{Y}*{Z} + {Z}*{T}"
    ));
    assert_eq!(conservative_gf(&n).unwrap(), expected);
    let factored = &p(&format!("1 + {Z}")) * &p(&format!("(1 + {W})(1 + {Y}) + {T}"));
    assert_eq!(expected, factored);
    let all = enumerate_flows(&n, &[1, 4]).unwrap();
    assert!(all.iter().all(Flow::is_conservative));
}

#[test]
fn unreachable_sink_has_no_flows() {
    let mut doc: NetworkDoc = serde_json::from_str(
        r#"{"planar": false, "boundary": [{"id": "b1", "role": "source"}, {"id": "b2", "role": "sink"}, {"id": "b3", "role": "sink"}], "interior": ["v"]}"#,
    )
    .unwrap();
    doc.edge("a", "b1", "v", Weight::var("a"));
    doc.edge("b", "v", "b2", Weight::var("b"));
    let n = Network::new(doc).unwrap();
    assert!(enumerate_flows(&n, &[3]).unwrap().is_empty());
    assert!(plucker(&n, &[3]).unwrap().numer().is_zero());
    assert_eq!(conservative_gf(&n).unwrap(), Poly::one());
}

#[test]
fn fig6_conservative_gf() {
    assert_eq!(conservative_gf(&samples::fig6()).unwrap(), p("1 + c*d*e*f"));
}

#[test]
fn fig1_plucker() {
    let n = samples::fig1();
    let got = plucker(&n, &[1, 5]).unwrap();
    assert_eq!(got.numer(), &p(&format!("a4*w2*f*y2*a5*(1 + {Z})")));
    assert!(got.equals(&r(&format!("a4*w2*f*y2*a5 / ((1 + {W})(1 + {Y}) + {T})"))));
    assert!(plucker(&n, &[1, 4]).unwrap().equals(&r("1")));
    let ratio = plucker(&n, &[2, 5]).unwrap();
    let series = series_div(ratio.numer(), ratio.denom(), 14).unwrap();
    assert_eq!(series, minor_series(&n, &[2, 5], 14).unwrap());
}

#[test]
fn network_x_alternating_flows() {
    let x = samples::network_x();
    let flows = enumerate_alternating_flows(&x, &[2, 4]).unwrap();
    assert_eq!(flows.len(), 1);
    assert_eq!(flows[0].edges.len(), 4);
    assert_eq!(flows[0].stats.theta, 1);
    assert_eq!(flows[0].walk_map(), [(1, 2), (3, 4)]);
    let conservative = enumerate_alternating_flows(&x, &[1, 3]).unwrap();
    assert_eq!(conservative.len(), 1);
    assert!(conservative[0].edges.is_empty());
    assert_eq!(conservative[0].stats.theta, 0);
}

#[test]
fn theta_is_epsilon_minus_beta() {
    let x = samples::network_x();
    for f in all_alternating_flows(&x).unwrap() {
        let s = f.stats;
        assert_eq!(s.theta as i64, s.epsilon as i64 - s.beta as i64);
        assert_eq!(s.beta + s.eta, 1);
    }
}

#[test]
fn perfectly_oriented_alternating_flows_are_flows() {
    let n = samples::fig1();
    for cols in n.column_sets() {
        let alt: Vec<Vec<usize>> = enumerate_alternating_flows(&n, &cols)
            .unwrap()
            .into_iter()
            .map(|f| {
                assert_eq!(f.stats.theta, 0);
                f.edges
            })
            .collect();
        let mut plain: Vec<Vec<usize>> = enumerate_flows(&n, &cols)
            .unwrap()
            .into_iter()
            .map(|f| f.edges)
            .collect();
        let mut alt = alt;
        alt.sort();
        plain.sort();
        assert_eq!(alt, plain, "J = {cols:?}");
        let general = plucker_general(&n, &cols).unwrap();
        let thm = plucker(&n, &cols).unwrap();
        assert_eq!((general.numer(), general.denom()), (thm.numer(), thm.denom()));
    }
}

#[test]
fn network_x_general_formula() {
    let x = samples::network_x();
    let got = plucker_general(&x, &[2, 4]).unwrap();
    assert_eq!((got.numer(), got.denom()), (&p("2*x1*x2*x3*x4"), &Poly::one()));
    let trivial = plucker_general(&x, &[1, 3]).unwrap();
    assert_eq!((trivial.numer(), trivial.denom()), (&Poly::one(), &Poly::one()));
    assert!(matches!(
        plucker_general(&samples::fig6(), &[2, 3]),
        Err(crate::Error::MissingRotation)
    ));
}

#[test]
fn fig6_single_entries() {
    let n = samples::fig6();
    let m12 = plucker_nonplanar_measurement(&n, 1, 2).unwrap();
    assert_eq!((m12.numer(), m12.denom()), (&p("a1*f*a2"), &p("1 + c*d*e*f")));
    let m42 = plucker_nonplanar_measurement(&n, 4, 2).unwrap();
    assert_eq!((m42.numer(), m42.denom()), (&p("a4*d*c*f*a2"), &p("1 + c*d*e*f")));
    assert!(plucker_nonplanar_measurement(&n, 1, 4).unwrap().is_zero());
}

#[test]
fn fig6_flow_formula_fails_for_two_by_two() {
    let n = samples::fig6();
    let flows = plucker(&n, &[2, 3]).unwrap();
    assert_eq!(
        (flows.numer(), flows.denom()),
        (&p("a1*a2*a3*a4*d*f"), &p("1 + c*d*e*f"))
    );
    let truth = r("a1*a2*a3*a4*d*f*(1 - c*d*e*f) / (1 + c*d*e*f)^2");
    assert!(!flows.equals(&truth));
    assert!(gf2_plucker_check(&n, &[2, 3], 14).unwrap());
}

#[test]
fn fig1_gf2_check() {
    let n = samples::fig1();
    for cols in n.column_sets() {
        assert!(gf2_plucker_check(&n, &cols, 12).unwrap());
    }
}
