use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// Prefix-sum comparison; sizes must agree.
    pub fn dominates(&self, other: &Partition) -> bool {
        assert_eq!(self.size(), other.size(), "dominance compares partitions of equal size");
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// `sum_{i<j} λ_i λ_j`.
    pub fn star(&self) -> usize {
        let n = self.size();
        (n * n - self.0.iter().map(|p| p * p).sum::<usize>()) / 2
    }

    /// Shape with its first column removed.
    pub fn remove_first_column(&self) -> Partition {
        Partition(self.0.iter().filter(|&&p| p > 1).map(|p| p - 1).collect())
    }

    /// Componentwise sum.
    pub fn plus(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition((0..n).map(|i| self.part(i) + other.part(i)).collect())
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Partition::from_unsorted(v)
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self, Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

/// Accepts `3,2,2`, `(3,2,2)` or the empty string.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Partition::new(parse_list(s)?)
    }
}

/// Sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::InvalidShape(format!("{parts:?} has a zero part")));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn sort(&self) -> Partition {
        Partition::from_unsorted(self.0.clone())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Composition::new(parse_list(s)?)
    }
}

pub(crate) fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<usize>, Error> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad integer {x:?} in {s:?}"))))
        .collect()
}

/// All partitions of `n`, lexicographically decreasing: `(n), (n-1,1), ...`.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All compositions of `n`, lexicographically decreasing.
pub fn compositions(n: usize) -> Vec<Composition> {
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for p in (1..=rem).rev() {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements of the parts of `λ`, lexicographically decreasing.
pub fn compositions_with_sort(lambda: &Partition) -> Vec<Composition> {
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &p in lambda.parts() {
        match counts.last_mut() {
            Some((v, c)) if *v == p => *c += 1,
            _ => counts.push((p, 1)),
        }
    }
    fn rec(counts: &mut [(usize, usize)], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if left == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            cur.push(counts[i].0);
            rec(counts, left - 1, cur, out);
            cur.pop();
            counts[i].1 += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut counts, lambda.len(), &mut Vec::new(), &mut out);
    out
}
