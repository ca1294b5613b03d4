//! Finite posets on `{1..n}` and natural unit interval orders.
//!
//! Elements are 1-based in every public method. Relations are stored as bit
//! masks, so `n` is limited to 64.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::qcore::{partitions, Composition, Partition};

pub const MAX_ELEMENTS: usize = 64;

/// `m: [n] → Z≥0` with `m(i) < i` and `m` weakly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ReverseHessenberg(Vec<usize>);

impl ReverseHessenberg {
    pub fn new(m: Vec<usize>) -> Result<Self, Error> {
        if m.len() > MAX_ELEMENTS {
            return Err(Error::InvalidHessenberg(format!("more than {MAX_ELEMENTS} elements")));
        }
        for (i, &v) in m.iter().enumerate() {
            if v > i {
                return Err(Error::InvalidHessenberg(format!("m({}) = {} is not < {}", i + 1, v, i + 1)));
            }
            if i > 0 && m[i - 1] > v {
                return Err(Error::InvalidHessenberg(format!("m decreases at position {}", i + 1)));
            }
        }
        Ok(ReverseHessenberg(m))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `m(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `|m| = m(1) + ... + m(n)`.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// The restriction `m^{(k)}` to `[k]`.
    pub fn prefix(&self, k: usize) -> ReverseHessenberg {
        ReverseHessenberg(self.0[..k].to_vec())
    }

    /// The path order whose incomparability graph is `1 - 2 - ... - n`.
    pub fn path(n: usize) -> ReverseHessenberg {
        ReverseHessenberg((0..n).map(|i| i.saturating_sub(1)).collect())
    }

    /// The order whose incomparability graph is the chain of cliques
    /// `K_{γ1}, K_{γ2}, ...` glued end to start.
    pub fn kchain(gamma: &Composition) -> Result<ReverseHessenberg, Error> {
        if gamma.parts().iter().any(|&g| g < 2) {
            return Err(Error::Precondition(format!("clique sizes in {gamma} must be at least 2")));
        }
        let mut blocks = Vec::new();
        let mut start = 1;
        for &g in gamma.parts() {
            blocks.push((start, start + g - 1));
            start += g - 1;
        }
        let m = (1..=start)
            .map(|v| {
                let (s, _) = blocks.iter().find(|&&(s, e)| s <= v && v <= e).expect("v lies in some block");
                s - 1
            })
            .collect();
        ReverseHessenberg::new(m)
    }
}

impl TryFrom<Vec<usize>> for ReverseHessenberg {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self, Error> {
        ReverseHessenberg::new(v)
    }
}

impl From<ReverseHessenberg> for Vec<usize> {
    fn from(m: ReverseHessenberg) -> Self {
        m.0
    }
}

impl fmt::Display for ReverseHessenberg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", crate::qcore::partition_join(&self.0))
    }
}

/// Comma separated values `m(1),...,m(n)`, optionally parenthesized.
impl FromStr for ReverseHessenberg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        ReverseHessenberg::new(crate::qcore::parse_usize_list(s)?)
    }
}

/// All reverse Hessenberg functions on `[n]`, lexicographically increasing.
pub fn enumerate_hessenberg(n: usize) -> Vec<ReverseHessenberg> {
    fn rec(i: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<ReverseHessenberg>) {
        if i == n {
            out.push(ReverseHessenberg(cur.clone()));
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..=i {
            cur.push(v);
            rec(i + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Strict partial order on `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poset {
    n: usize,
    below: Vec<u64>,
    above: Vec<u64>,
    incomparable: Vec<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Classification {
    pub is_31_free: bool,
    pub is_22_free: bool,
    pub is_3_free: bool,
}

impl Poset {
    /// Builds the order from a strict relation `less(a, b)` on 1-based elements,
    /// checking irreflexivity, antisymmetry and transitivity.
    pub fn from_relation(n: usize, less: impl Fn(usize, usize) -> bool) -> Result<Self, Error> {
        if n > MAX_ELEMENTS {
            return Err(Error::Precondition(format!("poset size {n} exceeds {MAX_ELEMENTS}")));
        }
        let mut below = vec![0u64; n];
        for b in 1..=n {
            for a in 1..=n {
                if less(a, b) {
                    if a == b {
                        return Err(Error::Precondition(format!("relation is reflexive at {a}")));
                    }
                    below[b - 1] |= 1 << (a - 1);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if below[b] >> a & 1 == 1 {
                    if below[a] >> b & 1 == 1 {
                        return Err(Error::Precondition(format!("relation is not antisymmetric at {},{}", a + 1, b + 1)));
                    }
                    if below[a] & !below[b] != 0 {
                        return Err(Error::Precondition("relation is not transitive".into()));
                    }
                }
            }
        }
        Ok(Self::from_below(n, below))
    }

    /// Transitive closure of the given cover pairs `(a, b)` meaning `a < b`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self, Error> {
        let mut rel = vec![vec![false; n]; n];
        for &(a, b) in covers {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::Precondition(format!("cover ({a},{b}) out of range")));
            }
            rel[a - 1][b - 1] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(n, |a, b| rel[a - 1][b - 1])
    }

    fn from_below(n: usize, below: Vec<u64>) -> Self {
        let mut above = vec![0u64; n];
        for b in 0..n {
            for a in 0..n {
                if below[b] >> a & 1 == 1 {
                    above[a] |= 1 << b;
                }
            }
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let incomparable = (0..n).map(|i| full & !below[i] & !above[i] & !(1 << i)).collect();
        Poset { n, below, above, incomparable }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a <_P b`.
    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b - 1] >> (a - 1) & 1 == 1
    }

    /// `a` and `b` are distinct and incomparable.
    #[inline]
    pub fn incomparable(&self, a: usize, b: usize) -> bool {
        self.incomparable[a - 1] >> (b - 1) & 1 == 1
    }

    /// `a ≐_P b`: equal or incomparable.
    #[inline]
    pub fn dote(&self, a: usize, b: usize) -> bool {
        a == b || self.incomparable(a, b)
    }

    /// Bit `i-1` set for each `i <_P a`.
    pub fn below_mask(&self, a: usize) -> u64 {
        self.below[a - 1]
    }

    pub fn above_mask(&self, a: usize) -> u64 {
        self.above[a - 1]
    }

    pub fn incomparable_mask(&self, a: usize) -> u64 {
        self.incomparable[a - 1]
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Whether the given elements are pairwise comparable.
    pub fn is_chain(&self, elems: &[usize]) -> bool {
        elems.iter().enumerate().all(|(i, &a)| elems[i + 1..].iter().all(|&b| a != b && !self.incomparable(a, b)))
    }

    /// Elements in an order compatible with `<_P`, ties by label.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut placed = 0u64;
        let mut out = Vec::with_capacity(self.n);
        while out.len() < self.n {
            let x = (1..=self.n)
                .find(|&x| placed >> (x - 1) & 1 == 0 && self.below[x - 1] & !placed == 0)
                .expect("acyclic relation");
            placed |= 1 << (x - 1);
            out.push(x);
        }
        out
    }

    /// Edges `{i, j}` with `i < j` of the incomparability graph.
    pub fn incomparability_graph(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.incomparable(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn inc_graph_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0u64;
            for i in 0..self.n {
                if frontier >> i & 1 == 1 {
                    next |= self.incomparable[i];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.full_mask()
    }

    pub fn classify(&self) -> Classification {
        let n = self.n;
        let mut has3 = false;
        let mut has31 = false;
        for b in 1..=n {
            for a in 1..=n {
                if !self.lt(a, b) {
                    continue;
                }
                for c in 1..=n {
                    if !self.lt(b, c) {
                        continue;
                    }
                    has3 = true;
                    if (1..=n).any(|d| self.incomparable(d, a) && self.incomparable(d, b) && self.incomparable(d, c)) {
                        has31 = true;
                    }
                }
            }
        }
        let mut has22 = false;
        'outer: for a in 1..=n {
            for b in 1..=n {
                if !self.lt(a, b) {
                    continue;
                }
                for c in 1..=n {
                    for d in 1..=n {
                        if self.lt(c, d)
                            && self.incomparable(a, c)
                            && self.incomparable(a, d)
                            && self.incomparable(b, c)
                            && self.incomparable(b, d)
                        {
                            has22 = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        Classification {
            is_31_free: !has31,
            is_22_free: !has22,
            is_3_free: !has3,
        }
    }

    /// Cardinality of a longest chain.
    pub fn max_chain_length(&self) -> usize {
        let mut best = vec![0usize; self.n + 1];
        let mut out = 0;
        for x in self.linear_extension() {
            let b = (1..=self.n).filter(|&y| self.lt(y, x)).map(|y| best[y]).max().unwrap_or(0) + 1;
            best[x] = b;
            out = out.max(b);
        }
        out
    }

    /// The reverse Hessenberg function `m` with `self == P_m`, if there is one.
    pub fn hessenberg(&self) -> Option<ReverseHessenberg> {
        let m: Vec<usize> = (1..=self.n)
            .map(|j| (1..j).filter(|&i| self.lt(i, j)).max().unwrap_or(0))
            .collect();
        let m = ReverseHessenberg::new(m).ok()?;
        (poset_from_hessenberg(&m) == *self).then_some(m)
    }

    /// Whether `mask` can be split into chains of the given sizes.
    pub fn has_chain_partition(&self, mask: u64, sizes: &[usize]) -> bool {
        let order: Vec<usize> = self.linear_extension().into_iter().filter(|&x| mask >> (x - 1) & 1 == 1).collect();
        if sizes.iter().sum::<usize>() != order.len() {
            return false;
        }
        let mut tops = vec![0usize; sizes.len()];
        let mut fill = vec![0usize; sizes.len()];
        self.chain_fill(&order, 0, sizes, &mut tops, &mut fill)
    }

    fn chain_fill(&self, order: &[usize], i: usize, sizes: &[usize], tops: &mut [usize], fill: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let x = order[i];
        for c in 0..sizes.len() {
            if fill[c] == sizes[c] {
                continue;
            }
            if fill[c] == 0 {
                // only the first empty chain of each size is tried
                if (0..c).any(|d| fill[d] == 0 && sizes[d] == sizes[c]) {
                    continue;
                }
            } else if !self.lt(tops[c], x) {
                continue;
            }
            let prev = tops[c];
            tops[c] = x;
            fill[c] += 1;
            if self.chain_fill(order, i + 1, sizes, tops, fill) {
                return true;
            }
            fill[c] -= 1;
            tops[c] = prev;
        }
        false
    }
}

/// `i <_P j` iff `i ≤ m(j)`.
pub fn poset_from_hessenberg(m: &ReverseHessenberg) -> Poset {
    let n = m.n();
    let below = (1..=n).map(|j| if m.at(j) == 0 { 0 } else { (1u64 << m.at(j)) - 1 }).collect();
    Poset::from_below(n, below)
}

/// `i <_P j` iff `a_i + 1 < a_j`.
pub fn poset_from_units(a: &[BigRational]) -> Result<Poset, Error> {
    if a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("left endpoints must be weakly increasing".into()));
    }
    let one = BigRational::one();
    Poset::from_relation(a.len(), |i, j| &a[i - 1] + &one < a[j - 1])
}

/// The dominance-largest partition `λ` such that `P` splits into chains of
/// sizes `λ_1, λ_2, ...`; the transpose of the shape of a bijective P-array.
pub fn greedy_partition(p: &Poset) -> Partition {
    partitions(p.n())
        .into_iter()
        .find(|nu| p.has_chain_partition(p.full_mask(), nu.parts()))
        .expect("the all-singletons split always exists")
}
