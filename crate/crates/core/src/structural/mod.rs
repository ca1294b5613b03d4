//! Constructions behind the positivity theorems: concatenation of P-arrays,
//! the greedy shape family, first-column extension for posets with a
//! bounded chain length, the `(k-2, 2)` factorization and multiplication
//! maps, and peak vectors for the path order.

mod factor;
mod path;

use crate::error::Error;
use crate::poset::{greedy_partition, Poset};
use crate::qcore::Partition;
use crate::tableaux::{enumerate_class, is_p_tableau, PArray, Tableau, TableauClass};

pub use factor::{
    complemented_set, complemented_set_by_conditions, factorize, k_set, mult_map, powersum_permutations, r_index,
    standard_pairs, FactorPair,
};
pub use path::{bpa_enumerate, materialize, peak, peak_inv, PeakVector};

/// Columns of `s` followed by columns of `t`.
pub fn concat(s: &PArray, t: &PArray) -> PArray {
    s.concat(t)
}

/// The shape whose conjugate moves `k_i` cells from part `i ∈ S` of the
/// greedy partition to part `i + 1`; indices in `s` are 1-based.
pub fn greedy_shape_family(p: &Poset, s: &[usize], k: &[usize]) -> Result<Partition, Error> {
    if s.len() != k.len() {
        return Err(Error::Precondition("one weight per index is required".into()));
    }
    if s.contains(&0) || k.contains(&0) {
        return Err(Error::Precondition("indices and weights must be positive".into()));
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[1] <= w[0] + 1) {
        return Err(Error::Precondition("indices must be distinct and non-adjacent".into()));
    }
    let gr = greedy_partition(p);
    let len = s.iter().map(|&i| i + 1).max().unwrap_or(0).max(gr.len());
    let mut mu: Vec<isize> = (0..len).map(|i| gr.part(i) as isize).collect();
    for (&i, &ki) in s.iter().zip(k) {
        mu[i - 1] -= ki as isize;
        mu[i] += ki as isize;
    }
    while mu.last() == Some(&0) {
        mu.pop();
    }
    if mu.iter().any(|&x| x <= 0) || mu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidShape(format!("{mu:?} is not a partition")));
    }
    Ok(Partition::new(mu.into_iter().map(|x| x as usize).collect())?.conjugate())
}

/// Every shape produced by [`greedy_shape_family`] for some choice of
/// indices and weights, without repeats, largest first.
pub fn greedy_shape_family_all(p: &Poset) -> Vec<Partition> {
    let gr = greedy_partition(p);
    let mut out = std::collections::BTreeSet::new();
    let mut choice: Vec<(usize, usize)> = Vec::new();
    family_rec(p, &gr, 1, &mut choice, &mut out);
    out.into_iter().rev().collect()
}

fn family_rec(
    p: &Poset,
    gr: &Partition,
    i: usize,
    choice: &mut Vec<(usize, usize)>,
    out: &mut std::collections::BTreeSet<Partition>,
) {
    if i > gr.len() {
        let (s, k): (Vec<usize>, Vec<usize>) = choice.iter().copied().unzip();
        if let Ok(l) = greedy_shape_family(p, &s, &k) {
            out.insert(l);
        }
        return;
    }
    family_rec(p, gr, i + 1, choice, out);
    for ki in 1..gr.part(i - 1) {
        choice.push((i, ki));
        family_rec(p, gr, i + 2, choice, out);
        choice.pop();
    }
}

/// The induced order on the elements of `mask`, relabeled `1..=|mask|` in
/// increasing order, together with the labels.
pub fn induced(p: &Poset, mask: u64) -> (Poset, Vec<usize>) {
    let labels: Vec<usize> = (1..=p.n()).filter(|&x| mask >> (x - 1) & 1 == 1).collect();
    let q = Poset::from_relation(labels.len(), |a, b| p.lt(labels[a - 1], labels[b - 1])).expect("restriction of a poset");
    (q, labels)
}

/// Tableaux of the class on exactly the elements of `mask`.
pub fn class_on_support(p: &Poset, mask: u64, lambda: &Partition, class: TableauClass) -> Vec<Tableau> {
    let (q, labels) = induced(p, mask);
    enumerate_class(&q, lambda, class)
        .into_iter()
        .map(|t| {
            let rows = t.rows().iter().map(|r| r.iter().map(|&x| labels[x - 1]).collect()).collect();
            Tableau::new(rows).expect("relabeling keeps the shape")
        })
        .collect()
}

fn support(t: &Tableau) -> u64 {
    t.rows().iter().flatten().fold(0, |m, &x| m | 1 << (x - 1))
}

fn chains_in(p: &Poset, mask: u64, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(p: &Poset, mask: u64, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let mut cand = mask;
        if let Some(&top) = cur.last() {
            cand &= p.above_mask(top);
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize + 1;
            cand &= cand - 1;
            cur.push(x);
            rec(p, mask, len, cur, out);
            cur.pop();
        }
    }
    rec(p, mask, len, &mut cur, &mut out);
    out
}

/// Bijective P-tableaux of shape `λ` whose first column is a chain and whose
/// remaining columns form a member of `key_inner`.
pub fn maxchain_extend(p: &Poset, lambda: &Partition, key_inner: &[Tableau]) -> Result<Vec<Tableau>, Error> {
    let r = p.max_chain_length();
    if lambda.len() != r {
        return Err(Error::Precondition(format!("{lambda} has {} rows but the longest chain has {r}", lambda.len())));
    }
    if lambda.size() != p.n() {
        return Err(Error::Precondition(format!("{lambda} is not a partition of {}", p.n())));
    }
    let inner_shape = lambda.remove_first_column();
    let mut out = Vec::new();
    for t in key_inner.iter().filter(|t| t.shape() == inner_shape) {
        let rest = p.full_mask() & !support(t);
        for c in chains_in(p, rest, r) {
            let a = PArray::new(vec![c]).concat(&PArray::from(t));
            if let Ok(u) = a.to_tableau() {
                if is_p_tableau(p, &u) {
                    out.push(u);
                }
            }
        }
    }
    out.sort_by_cached_key(|t| t.colword());
    out.dedup();
    Ok(out)
}

/// First-column extension of powerful tableaux for posets without a
/// three-element chain; shapes with one row are the powersum words.
pub fn three_free_key_tableaux(p: &Poset, lambda: &Partition) -> Result<Vec<Tableau>, Error> {
    if !p.classify().is_3_free {
        return Err(Error::Precondition("the poset has a three-element chain".into()));
    }
    if lambda.len() <= 1 || lambda.len() != p.max_chain_length() {
        return Ok(enumerate_class(p, lambda, TableauClass::Powerful));
    }
    let inner_shape = lambda.remove_first_column();
    let mut inner = Vec::new();
    for mask in subsets_of_size(p.n(), inner_shape.size()) {
        inner.extend(class_on_support(p, mask, &inner_shape, TableauClass::Powerful));
    }
    maxchain_extend(p, lambda, &inner)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Key tableaux of the rectangle `(c^r)` with `r` the longest chain, built
/// by repeated first-column extension from single columns.
pub fn rectangle_key_tableaux(p: &Poset, c: usize) -> Result<Vec<Tableau>, Error> {
    let r = p.max_chain_length();
    if r == 0 || c * r != p.n() {
        return Err(Error::Precondition(format!("a {c}×{r} rectangle does not fit {} elements", p.n())));
    }
    fn rec(p: &Poset, mask: u64, c: usize, r: usize) -> Vec<Tableau> {
        if c == 0 {
            return if mask == 0 { vec![Tableau::empty()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in chains_in(p, mask, r) {
            let rest = first.iter().fold(mask, |m, &x| m & !(1 << (x - 1)));
            for t in rec(p, rest, c - 1, r) {
                let a = PArray::new(vec![first.clone()]).concat(&PArray::from(&t));
                if let Ok(u) = a.to_tableau() {
                    if is_p_tableau(p, &u) {
                        out.push(u);
                    }
                }
            }
        }
        out
    }
    let mut out = rec(p, p.full_mask(), c, r);
    out.sort_by_cached_key(|t| t.colword());
    Ok(out)
}
