use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A variable name. Cheap to clone; ordered by its text.
pub type Var = Arc<str>;

/// A product of variables with positive exponents.
///
/// Stored as `(variable, exponent)` pairs sorted by variable name with no
/// zero exponents, so structural equality is monomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    /// The empty product.
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(name: &str) -> Self {
        Monomial {
            factors: vec![(Var::from(name), 1)],
        }
    }

    /// Builds a monomial from arbitrary `(name, exponent)` pairs, merging
    /// repeated names and dropping zero exponents.
    pub fn from_factors<S: AsRef<str>>(factors: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut out: Vec<(Var, u32)> = Vec::new();
        for (name, exp) in factors {
            if exp == 0 {
                continue;
            }
            let name = name.as_ref();
            match out.binary_search_by(|(v, _)| v.as_ref().cmp(name)) {
                Ok(idx) => out[idx].1 += exp,
                Err(idx) => out.insert(idx, (Var::from(name), exp)),
            }
        }
        Monomial { factors: out }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.factors
            .binary_search_by(|(v, _)| v.as_ref().cmp(name))
            .map(|idx| self.factors[idx].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> + '_ {
        self.factors.iter().map(|(v, e)| (v.as_ref(), *e))
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> + '_ {
        self.factors.iter().map(|(v, _)| v.as_ref())
    }

    /// True iff every exponent is at most one.
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn pow(&self, exp: u32) -> Monomial {
        if exp == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|(v, e)| (v.clone(), e * exp)).collect(),
        }
    }
}

/// Ascending total degree, then lexicographic on the expanded variable
/// sequence (`x^2*y` compares as `x, x, y`).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| expanded_cmp(&self.factors, &other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn expanded_cmp(a: &[(Var, u32)], b: &[(Var, u32)]) -> Ordering {
    let mut ia = a.iter().flat_map(|(v, e)| std::iter::repeat_n(v, *e as usize));
    let mut ib = b.iter().flat_map(|(v, e)| std::iter::repeat_n(v, *e as usize));
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Equal => continue,
                ord => return ord,
            },
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (idx, (v, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
