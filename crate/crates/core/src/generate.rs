//! Seeded random networks cut from a square grid, for property tests and
//! fuzzing. Grid coordinates give the rotation system, so planar outputs are
//! embedded by construction.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flows::simple_cycles;
use crate::network::{
    is_perfectly_oriented, prune_interior_sources_sinks, suppress_degree_two, BoundaryVertex, HalfEdge, Network,
    NetworkDoc, Role, Weight,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    /// Planar and perfectly oriented.
    PerfectlyOriented,
    /// Planar, perfectly oriented and without directed cycles.
    Acyclic,
    /// Planar, pruned and suppressed, with at least one vertex that is not
    /// perfectly oriented.
    General,
    /// Perfectly oriented with one extra chord; no rotation.
    NonPlanar,
}

#[derive(Clone, Copy, Debug)]
pub struct GenOptions {
    pub kind: Kind,
    /// Upper bound on the edge count, stubs included.
    pub max_edges: usize,
    /// Grid side lengths are drawn from `2..=max_side`.
    pub max_side: usize,
}

impl GenOptions {
    pub fn new(kind: Kind) -> Self {
        GenOptions {
            kind,
            max_edges: 22,
            max_side: 4,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Cell(usize, usize);

#[derive(Clone, Copy, Debug)]
enum Side {
    Top,
    Right,
    Bottom,
    Left,
}

impl Side {
    fn direction(self) -> (f64, f64) {
        match self {
            Side::Top => (0.0, 1.0),
            Side::Right => (1.0, 0.0),
            Side::Bottom => (0.0, -1.0),
            Side::Left => (-1.0, 0.0),
        }
    }
}

fn position(c: Cell) -> (f64, f64) {
    (c.1 as f64, -(c.0 as f64))
}

/// Perimeter slots in clockwise order around the grid.
fn slots(rows: usize, cols: usize) -> Vec<(Cell, Side)> {
    let mut out = Vec::new();
    out.extend((0..cols).map(|c| (Cell(0, c), Side::Top)));
    out.extend((0..rows).map(|r| (Cell(r, cols - 1), Side::Right)));
    out.extend((0..cols).rev().map(|c| (Cell(rows - 1, c), Side::Bottom)));
    out.extend((0..rows).rev().map(|r| (Cell(r, 0), Side::Left)));
    out
}

struct Sketch {
    grid_edges: Vec<(Cell, Cell)>,
    stubs: Vec<(Cell, Side)>,
}

fn sketch(rng: &mut ChaCha8Rng, opts: &GenOptions) -> Sketch {
    let rows = rng.random_range(2..=opts.max_side.max(2));
    let cols = rng.random_range(2..=opts.max_side.max(2));
    let mut grid_edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                grid_edges.push((Cell(r, c), Cell(r, c + 1)));
            }
            if r + 1 < rows {
                grid_edges.push((Cell(r, c), Cell(r + 1, c)));
            }
        }
    }
    let all_slots = slots(rows, cols);
    let n_stubs = rng.random_range(3..=6.min(all_slots.len()));
    let mut picked: Vec<usize> = (0..all_slots.len()).collect();
    picked.shuffle(rng);
    picked.truncate(n_stubs);
    picked.sort();
    let stubs: Vec<(Cell, Side)> = picked.iter().map(|&k| all_slots[k]).collect();
    grid_edges.shuffle(rng);
    let keep = rng.random_range(grid_edges.len() * 2 / 3..=grid_edges.len());
    grid_edges.truncate(keep.min(opts.max_edges.saturating_sub(stubs.len())));
    Sketch { grid_edges, stubs }
}

/// A directed edge of the sketch. Stubs are referred to by slot order.
#[derive(Clone, Copy)]
enum Arc {
    Grid(Cell, Cell),
    StubIn(usize),
    StubOut(usize),
}

fn orient(rng: &mut ChaCha8Rng, s: &Sketch, kind: Kind) -> Vec<Arc> {
    let mut cells: Vec<Cell> = s.grid_edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    cells.extend(s.stubs.iter().map(|st| st.0));
    cells.sort();
    cells.dedup();
    let mut rank: HashMap<Cell, u32> = cells.iter().map(|&c| (c, rng.random())).collect();
    let acyclic = kind == Kind::Acyclic;
    let mut forward: Vec<bool> = if acyclic {
        s.grid_edges.iter().map(|(a, b)| rank[a] < rank[b]).collect()
    } else {
        face_cycles(rng, s)
    };
    let mut stub_in: Vec<bool> = (0..s.stubs.len()).map(|_| rng.random_bool(0.5)).collect();
    if kind != Kind::General {
        // Local repair: re-orient around a vertex that is not perfectly
        // oriented until none is left or the budget runs out.
        for _ in 0..200 {
            let mut ins: HashMap<Cell, usize> = HashMap::new();
            let mut outs: HashMap<Cell, usize> = HashMap::new();
            for (k, &(a, b)) in s.grid_edges.iter().enumerate() {
                let (t, h) = if forward[k] { (a, b) } else { (b, a) };
                *outs.entry(t).or_default() += 1;
                *ins.entry(h).or_default() += 1;
            }
            for (k, &(c, _)) in s.stubs.iter().enumerate() {
                *(if stub_in[k] { &mut ins } else { &mut outs }).entry(c).or_default() += 1;
            }
            let count = |m: &HashMap<Cell, usize>, c: &Cell| m.get(c).copied().unwrap_or(0);
            let bad: Vec<Cell> = cells
                .iter()
                .copied()
                .filter(|c| count(&ins, c) != 1 && count(&outs, c) != 1)
                .collect();
            let Some(&c) = bad.get(rng.random_range(0..bad.len().max(1))) else {
                break;
            };
            if acyclic {
                rank.insert(c, rng.random());
                forward = s.grid_edges.iter().map(|(a, b)| rank[a] < rank[b]).collect();
                continue;
            }
            let incident: Vec<Option<usize>> = s
                .grid_edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == c || b == c)
                .map(|(k, _)| Some(k))
                .chain(s.stubs.iter().enumerate().filter(|(_, st)| st.0 == c).map(|_| None))
                .collect();
            match incident[rng.random_range(0..incident.len())] {
                Some(k) => forward[k] = !forward[k],
                None => {
                    let k = s.stubs.iter().position(|st| st.0 == c).expect("stub at c");
                    stub_in[k] = !stub_in[k];
                }
            }
        }
    }
    let mut arcs: Vec<Arc> = s
        .grid_edges
        .iter()
        .zip(&forward)
        .map(|(&(a, b), &f)| if f { Arc::Grid(a, b) } else { Arc::Grid(b, a) })
        .collect();
    arcs.extend(
        stub_in
            .iter()
            .enumerate()
            .map(|(k, &i)| if i { Arc::StubIn(k) } else { Arc::StubOut(k) }),
    );
    arcs
}

/// Random orientation in which about half of the grid squares, where all
/// four sides survive, become directed cycles.
fn face_cycles(rng: &mut ChaCha8Rng, s: &Sketch) -> Vec<bool> {
    let mut forward: Vec<bool> = s.grid_edges.iter().map(|_| rng.random_bool(0.5)).collect();
    let index: HashMap<(Cell, Cell), usize> = s.grid_edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut corners: Vec<Cell> = s.grid_edges.iter().map(|e| e.0).collect();
    corners.sort();
    corners.dedup();
    corners.shuffle(rng);
    for Cell(r, c) in corners {
        let ring = [Cell(r, c), Cell(r, c + 1), Cell(r + 1, c + 1), Cell(r + 1, c)];
        let sides: Vec<(usize, bool)> = (0..4)
            .filter_map(|k| {
                let (a, b) = (ring[k], ring[(k + 1) % 4]);
                index
                    .get(&(a, b))
                    .map(|&e| (e, true))
                    .or_else(|| index.get(&(b, a)).map(|&e| (e, false)))
            })
            .collect();
        if sides.len() == 4 && rng.random_bool(0.5) {
            let clockwise = rng.random_bool(0.5);
            for (e, along) in sides {
                forward[e] = along == clockwise;
            }
        }
    }
    forward
}

fn cell_id(c: Cell) -> String {
    format!("v{}_{}", c.0, c.1)
}

/// Builds the document, keeping only the part connected to a stub.
fn assemble(s: &Sketch, arcs: &[Arc], name: &str) -> Option<NetworkDoc> {
    let mut adj: HashMap<Cell, Vec<Cell>> = HashMap::new();
    for &(a, b) in &s.grid_edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut alive: HashSet<Cell> = s.stubs.iter().map(|st| st.0).collect();
    let mut stack: Vec<Cell> = alive.iter().copied().collect();
    while let Some(c) = stack.pop() {
        for &d in adj.get(&c).into_iter().flatten() {
            if alive.insert(d) {
                stack.push(d);
            }
        }
    }
    let mut doc = NetworkDoc {
        name: name.to_owned(),
        planar: true,
        ..NetworkDoc::default()
    };
    let mut interior: Vec<Cell> = alive.iter().copied().collect();
    interior.sort();
    doc.interior = interior.iter().map(|&c| cell_id(c)).collect();
    let mut around: BTreeMap<Cell, Vec<(f64, HalfEdge)>> = BTreeMap::new();
    let mut sources = 0;
    for (k, arc) in arcs.iter().enumerate() {
        let id = format!("e{k}");
        let w = Weight::var(&id);
        match *arc {
            Arc::Grid(a, b) => {
                if !alive.contains(&a) {
                    continue;
                }
                doc.edge(&id, &cell_id(a), &cell_id(b), w);
                let (pa, pb) = (position(a), position(b));
                around
                    .entry(a)
                    .or_default()
                    .push(((pb.1 - pa.1).atan2(pb.0 - pa.0), HalfEdge::tail(&id)));
                around
                    .entry(b)
                    .or_default()
                    .push(((pa.1 - pb.1).atan2(pa.0 - pb.0), HalfEdge::head(&id)));
            }
            Arc::StubIn(t) | Arc::StubOut(t) => {
                let (cell, side) = s.stubs[t];
                let b = format!("b{}", t + 1);
                let (dx, dy) = side.direction();
                let angle = dy.atan2(dx);
                let incoming = matches!(arc, Arc::StubIn(_));
                if incoming {
                    sources += 1;
                    doc.edge(&id, &b, &cell_id(cell), w);
                    around.entry(cell).or_default().push((angle, HalfEdge::head(&id)));
                } else {
                    doc.edge(&id, &cell_id(cell), &b, w);
                    around.entry(cell).or_default().push((angle, HalfEdge::tail(&id)));
                }
                doc.boundary.push(BoundaryVertex {
                    id: b,
                    role: if incoming { Role::Source } else { Role::Sink },
                });
            }
        }
    }
    if sources == 0 || sources == s.stubs.len() {
        return None;
    }
    // Clockwise is decreasing angle.
    doc.rotation = Some(
        around
            .into_iter()
            .map(|(c, mut list)| {
                list.sort_by(|x, y| y.0.total_cmp(&x.0));
                (cell_id(c), list.into_iter().map(|(_, h)| h).collect())
            })
            .collect(),
    );
    Some(doc)
}

fn add_chord(rng: &mut ChaCha8Rng, doc: &mut NetworkDoc) -> bool {
    if doc.interior.len() < 2 {
        return false;
    }
    let a = rng.random_range(0..doc.interior.len());
    let mut b = rng.random_range(0..doc.interior.len() - 1);
    if b >= a {
        b += 1;
    }
    let (u, v) = (doc.interior[a].clone(), doc.interior[b].clone());
    doc.edge("chord", &u, &v, Weight::var("chord"));
    doc.planar = false;
    doc.rotation = None;
    true
}

fn attempt(rng: &mut ChaCha8Rng, opts: &GenOptions, name: &str) -> Option<Network> {
    let s = sketch(rng, opts);
    let arcs = orient(rng, &s, opts.kind);
    let mut doc = assemble(&s, &arcs, name)?;
    if opts.kind == Kind::NonPlanar && (!add_chord(rng, &mut doc) || doc.edges.len() > opts.max_edges) {
        return None;
    }
    let n = Network::new(doc).ok()?;
    match opts.kind {
        Kind::General => {
            let n = suppress_degree_two(&prune_interior_sources_sinks(&n)).ok()?;
            let ok = !is_perfectly_oriented(&n) && !n.sources().is_empty() && n.sources().len() < n.n();
            ok.then_some(n)
        }
        // Mostly keep networks with cycles, so that denominators are
        // not all 1.
        Kind::PerfectlyOriented if simple_cycles(&n).is_empty() && rng.random_bool(0.75) => None,
        _ => is_perfectly_oriented(&n).then_some(n),
    }
}

/// A random network of the requested kind. Deterministic in the state of
/// `rng`.
pub fn random_network(rng: &mut ChaCha8Rng, opts: &GenOptions, name: &str) -> Network {
    loop {
        if let Some(n) = attempt(rng, opts, name) {
            return n;
        }
    }
}

/// `count` networks from `seed`, named `case<k>`.
pub fn random_networks(seed: u64, count: usize, opts: &GenOptions) -> Vec<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| random_network(&mut rng, opts, &format!("case{k}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::validate;

    #[test]
    fn every_kind_validates_and_is_deterministic() {
        for kind in [Kind::PerfectlyOriented, Kind::Acyclic, Kind::General, Kind::NonPlanar] {
            let opts = GenOptions::new(kind);
            let nets = random_networks(7, 15, &opts);
            let again = random_networks(7, 15, &opts);
            for (a, b) in nets.iter().zip(&again) {
                assert_eq!(a.doc(), b.doc());
                assert!(validate(a.doc()).is_empty());
                assert!(a.edge_count() <= 22);
                assert_eq!(a.is_planar(), kind != Kind::NonPlanar);
                assert_eq!(is_perfectly_oriented(a), kind != Kind::General, "{kind:?}");
            }
        }
    }

    #[test]
    fn acyclic_networks_have_no_cycles() {
        for n in random_networks(3, 20, &GenOptions::new(Kind::Acyclic)) {
            assert!(crate::flows::simple_cycles(&n).is_empty());
        }
    }

    #[test]
    fn general_networks_need_blowups_or_pulls() {
        let nets = random_networks(11, 20, &GenOptions::new(Kind::General));
        assert!(nets.iter().all(|n| n.interior_vertices().any(|v| n.degree(v) >= 4)));
    }
}
