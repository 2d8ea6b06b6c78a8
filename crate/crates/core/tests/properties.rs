use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use circnet::flows::plucker;
use circnet::generate::{random_network, GenOptions, Kind};
use circnet::network::HalfEdge;
use circnet::walks::{classify_pair, determinant, enumerate_walks, loop_erase, xing, Bijection, PairKind};
use circnet::{Monomial, Network, NetworkDoc, Poly, RationalFn, TruncatedSeries};

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-4i64..=4, 0u32..=2, 0u32..=2, 0u32..=2), 0..5).prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(c, a, b, d)| (BigInt::from(c), Monomial::from_factors([("a", a), ("b", b), ("c", d)]))),
        )
    })
}

fn unit_series_strategy() -> impl Strategy<Value = Poly> {
    poly_strategy().prop_map(|p| {
        let shifted = &p - &Poly::constant(p.constant_term());
        &shifted + &Poly::one()
    })
}

proptest! {
    #[test]
    fn ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, Poly::zero());
        prop_assert_eq!(&p * &Poly::one(), p.clone());
    }

    #[test]
    fn display_parse_roundtrip(p in poly_strategy(), q in unit_series_strategy()) {
        let back: Poly = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        let f = RationalFn::new(p.clone(), q).unwrap();
        let back: RationalFn = f.to_string().parse().unwrap();
        prop_assert!(back.equals(&f));
    }

    #[test]
    fn series_inverse(g in unit_series_strategy(), bound in 0u32..8) {
        let s = TruncatedSeries::new(&g, bound);
        let inv = s.invert().unwrap();
        prop_assert_eq!(s.mul(&inv), TruncatedSeries::one(bound));
        prop_assert_eq!(inv.invert().unwrap(), s);
    }

    #[test]
    fn truncated_product_is_truncation(p in poly_strategy(), q in poly_strategy(), bound in 0u32..7) {
        prop_assert_eq!(p.mul_truncated(&q, bound), (&p * &q).truncate(bound));
    }

    #[test]
    fn determinant_is_multiplicative(
        size in 1usize..5,
        entries in prop::collection::vec(-3i64..=3, 32),
    ) {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let a: Vec<Vec<BigRational>> =
            (0..size).map(|r| (0..size).map(|c| q(entries[r * size + c])).collect()).collect();
        let b: Vec<Vec<BigRational>> =
            (0..size).map(|r| (0..size).map(|c| q(entries[16 + r * size + c])).collect()).collect();
        let ab: Vec<Vec<BigRational>> = (0..size)
            .map(|r| (0..size).map(|c| (0..size).map(|k| &a[r][k] * &b[k][c]).sum()).collect())
            .collect();
        let one = q(1);
        prop_assert_eq!(determinant(&ab, &one), determinant(&a, &one) * determinant(&b, &one));
        // Swapping two rows flips the sign.
        if size > 1 {
            let mut swapped = a.clone();
            swapped.swap(0, size - 1);
            prop_assert_eq!(determinant(&swapped, &one), -determinant(&a, &one));
        }
    }
}

/// A random `π: I → J` on `n` boundary points fixing `I ∩ J`.
fn random_bijection(seed: u64) -> (usize, Bijection) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(4..=10);
    let k = rng.random_range(2..=n / 2 + 1);
    let all: Vec<usize> = (1..=n).collect();
    let mut sources: Vec<usize> = all.choose_multiple(&mut rng, k).copied().collect();
    let mut cols: Vec<usize> = all.choose_multiple(&mut rng, k).copied().collect();
    sources.sort();
    cols.sort();
    let from: Vec<usize> = sources.iter().copied().filter(|i| !cols.contains(i)).collect();
    let mut to: Vec<usize> = cols.iter().copied().filter(|j| !sources.contains(j)).collect();
    to.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = from.into_iter().zip(to).collect();
    pairs.extend(sources.iter().copied().filter(|i| cols.contains(i)).map(|i| (i, i)));
    (n, Bijection::new(pairs).unwrap())
}

/// Boundary points placed clockwise on the unit circle.
fn point(n: usize, k: usize) -> (f64, f64) {
    let t = -2.0 * std::f64::consts::PI * k as f64 / n as f64;
    (t.cos(), t.sin())
}

fn segments_cross(n: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let orient =
        |p: (f64, f64), q: (f64, f64), r: (f64, f64)| ((q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)).signum();
    let (a, b, c, d) = (point(n, a), point(n, b), point(n, c), point(n, d));
    orient(a, b, c) != orient(a, b, d) && orient(c, d, a) != orient(c, d, b)
}

proptest! {
    #[test]
    fn pair_kinds_match_chord_geometry(seed in any::<u64>()) {
        let (n, pi) = random_bijection(seed);
        let moved = pi.moved();
        let mut crossings = 0;
        for (x, &i1) in moved.iter().enumerate() {
            for &i2 in &moved[x + 1..] {
                let (j1, j2) = (pi.get(i1).unwrap(), pi.get(i2).unwrap());
                let want = if segments_cross(n, (i1, j1), (i2, j2)) {
                    crossings += 1;
                    PairKind::Crossing
                } else if segments_cross(n, (i1, i2), (j1, j2)) {
                    PairKind::Misalignment
                } else {
                    PairKind::Alignment
                };
                prop_assert_eq!(classify_pair(i1, i2, &pi), want);
            }
        }
        prop_assert_eq!(xing(&pi), crossings);
    }

    #[test]
    fn tail_swap_parity(seed in any::<u64>()) {
        let (_, pi) = random_bijection(seed);
        prop_assert!(pi.fixes_intersection());
        let moved = pi.moved();
        for (x, &k) in moved.iter().enumerate() {
            for &l in &moved[x + 1..] {
                let swapped = pi.swap_targets(k, l);
                prop_assert!(swapped.fixes_intersection());
                let same_parity = (xing(&pi) + xing(&swapped)) % 2 == 0;
                let misaligned = classify_pair(k, l, &pi) == PairKind::Misalignment;
                prop_assert_eq!(same_parity, misaligned, "k = {}, l = {}, π = {:?}", k, l, pi);
                prop_assert_eq!(swapped.swap_targets(k, l), pi.clone());
            }
        }
    }
}

fn network(seed: u64, kind: Kind) -> Network {
    random_network(&mut ChaCha8Rng::seed_from_u64(seed), &GenOptions::new(kind), "prop")
}

/// Renames every vertex and edge and reverses the edge list; weights keep
/// their variables.
fn relabel(n: &Network) -> Network {
    let mut doc: NetworkDoc = n.doc().clone();
    let v = |id: &str| format!("v_{id}");
    let e = |id: &str| format!("r_{id}");
    for b in &mut doc.boundary {
        b.id = v(&b.id);
    }
    for i in &mut doc.interior {
        *i = v(i);
    }
    doc.interior.reverse();
    for edge in &mut doc.edges {
        edge.id = e(&edge.id);
        edge.tail = v(&edge.tail);
        edge.head = v(&edge.head);
    }
    doc.edges.reverse();
    doc.rotation = doc.rotation.map(|rot| {
        rot.into_iter()
            .map(|(k, hs)| {
                (
                    v(&k),
                    hs.into_iter().map(|h| HalfEdge::new(e(&h.edge), h.end)).collect(),
                )
            })
            .collect::<BTreeMap<_, _>>()
    });
    Network::new(doc).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn json_roundtrip(seed in any::<u64>(), planar in any::<bool>()) {
        let n = network(seed, if planar { Kind::PerfectlyOriented } else { Kind::NonPlanar });
        let back = Network::from_json(&n.to_json()).unwrap();
        prop_assert_eq!(back.doc(), n.doc());
    }

    #[test]
    fn loop_erasure(seed in any::<u64>()) {
        let n = network(seed, Kind::PerfectlyOriented);
        for &i in n.sources().positions() {
            for j in 1..=n.n() {
                for w in enumerate_walks(&n, i, j, 12).unwrap() {
                    let (erased, loops) = loop_erase(&w);
                    prop_assert!(erased.is_self_avoiding(&n));
                    prop_assert_eq!((erased.start, erased.end), (w.start, w.end));
                    prop_assert_eq!(loop_erase(&erased), (erased.clone(), 0));
                    prop_assert_eq!(loops == 0, w.is_self_avoiding(&n));
                    let kept: HashSet<usize> = w.edges.iter().copied().collect();
                    prop_assert!(erased.edges.iter().all(|e| kept.contains(e)));
                    prop_assert!(erased.len() + loops <= w.len());
                }
            }
        }
    }

    #[test]
    fn plucker_ignores_labels(seed in any::<u64>()) {
        let n = network(seed, Kind::PerfectlyOriented);
        let m = relabel(&n);
        for cols in n.column_sets() {
            prop_assert!(plucker(&n, &cols).unwrap().equals(&plucker(&m, &cols).unwrap()), "J = {:?}", cols);
        }
    }
}
