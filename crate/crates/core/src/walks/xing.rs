//! Bijections between source and column sets, and the crossing-number sign
//! rule for expanding minors.

use super::measure::measurement_row;
use crate::error::{Error, Result};
use crate::network::Network;
use crate::poly::TruncatedSeries;

/// A bijection `I → J`, stored as `(i, π(i))` pairs sorted by `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bijection {
    pairs: Vec<(usize, usize)>,
}

impl Bijection {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Bijection> {
        pairs.sort();
        let mut targets: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        targets.sort();
        let distinct = |v: &[usize]| v.windows(2).all(|w| w[0] != w[1]);
        let sources: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        if !distinct(&sources) || !distinct(&targets) {
            return Err(Error::BadColumnSet("not a bijection".into()));
        }
        Ok(Bijection { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == i).map(|p| p.1)
    }

    /// Sources not in the image, i.e. `I ∖ J`.
    pub fn moved(&self) -> Vec<usize> {
        self.pairs
            .iter()
            .map(|p| p.0)
            .filter(|&i| !self.pairs.iter().any(|p| p.1 == i))
            .collect()
    }

    pub fn fixes_intersection(&self) -> bool {
        self.pairs
            .iter()
            .all(|&(i, _)| !self.pairs.iter().any(|p| p.1 == i) || self.get(i) == Some(i))
    }

    /// `s_{π(k),π(l)} ∘ π`: the images of `k` and `l` exchanged.
    pub fn swap_targets(&self, k: usize, l: usize) -> Bijection {
        let (pk, pl) = (self.get(k).expect("k in I"), self.get(l).expect("l in I"));
        Bijection {
            pairs: self
                .pairs
                .iter()
                .map(|&(i, j)| match i {
                    _ if i == k => (i, pl),
                    _ if i == l => (i, pk),
                    _ => (i, j),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PairKind {
    Crossing,
    Alignment,
    Misalignment,
}

fn product_negative(a: i64, b: i64, c: i64, d: i64) -> bool {
    (a.signum() * b.signum() * c.signum() * d.signum()) < 0
}

/// Relative position of the chords `[b_{i1}, b_{π(i1)}]` and
/// `[b_{i2}, b_{π(i2)}]`, for `i1 < i2` both outside the image of `π`.
pub fn classify_pair(i1: usize, i2: usize, pi: &Bijection) -> PairKind {
    let (a, b) = (i1 as i64, i2 as i64);
    let ja = pi.get(i1).expect("i1 in I") as i64;
    let jb = pi.get(i2).expect("i2 in I") as i64;
    if product_negative(a - jb, jb - ja, ja - b, b - a) {
        PairKind::Crossing
    } else if product_negative(a - jb, jb - b, b - ja, ja - a) {
        PairKind::Misalignment
    } else {
        PairKind::Alignment
    }
}

/// Number of crossing pairs of `π`.
pub fn xing(pi: &Bijection) -> usize {
    let moved = pi.moved();
    let mut count = 0;
    for (x, &i1) in moved.iter().enumerate() {
        for &i2 in &moved[x + 1..] {
            if classify_pair(i1, i2, pi) == PairKind::Crossing {
                count += 1;
            }
        }
    }
    count
}

/// Every bijection `I → J` fixing `I ∩ J` pointwise.
pub fn bijections(sources: &[usize], cols: &[usize]) -> Vec<Bijection> {
    let fixed: Vec<usize> = sources.iter().copied().filter(|i| cols.contains(i)).collect();
    let from: Vec<usize> = sources.iter().copied().filter(|i| !cols.contains(i)).collect();
    let to: Vec<usize> = cols.iter().copied().filter(|j| !sources.contains(j)).collect();
    let mut out = Vec::new();
    let mut used = vec![false; to.len()];
    let mut cur = Vec::new();
    fn rec(
        from: &[usize],
        to: &[usize],
        fixed: &[usize],
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Bijection>,
    ) {
        if cur.len() == from.len() {
            let mut pairs = cur.clone();
            pairs.extend(fixed.iter().map(|&i| (i, i)));
            out.push(Bijection::new(pairs).expect("distinct by construction"));
            return;
        }
        let i = from[cur.len()];
        for t in 0..to.len() {
            if !used[t] {
                used[t] = true;
                cur.push((i, to[t]));
                rec(from, to, fixed, used, cur, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    if from.len() == to.len() {
        rec(&from, &to, &fixed, &mut used, &mut cur, &mut out);
    }
    out
}

/// `Δ_J = Σ_π (-1)^{xing(π)} Π_i M_{i,π(i)}`, truncated at `bound`.
pub fn minor_via_bijections(n: &Network, cols: &[usize], bound: u32) -> Result<TruncatedSeries> {
    n.check_columns(cols)?;
    let sources = n.sources().positions();
    let rows = sources
        .iter()
        .map(|&i| measurement_row(n, i, bound))
        .collect::<Result<Vec<_>>>()?;
    let mut total = TruncatedSeries::zero(bound);
    for pi in bijections(sources, cols) {
        let mut term = TruncatedSeries::one(bound);
        for (t, &(_, j)) in pi.pairs().iter().enumerate() {
            term = term.mul(&rows[t][j - 1]);
            if term.is_zero() {
                break;
            }
        }
        total = if xing(&pi) % 2 == 1 {
            total.sub(&term)
        } else {
            total.add(&term)
        };
    }
    Ok(total)
}
