use serde::Serialize;

use crate::error::Error;
use crate::poset::Poset;

use super::{is_p_array, PArray, Tableau};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Balance {
    Balanced,
    LeftUnbalanced,
    RightUnbalanced,
}

/// A connected component of the incomparability graph between columns
/// `column` and `column + 1` (0-based).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ladder {
    pub column: usize,
    /// Row indices of the component's cells in the left column.
    pub left: Vec<usize>,
    /// Row indices of the component's cells in the right column.
    pub right: Vec<usize>,
    pub balance: Balance,
}

impl Ladder {
    /// The component's entries, left column first.
    pub fn entries(&self, a: &PArray) -> Vec<usize> {
        let l = self.left.iter().map(|&r| a.cols[self.column][r]);
        let rr = self.right.iter().map(|&r| a.cols[self.column + 1][r]);
        l.chain(rr).collect()
    }
}

/// Components between 0-based columns `i` and `i + 1`, in order of their
/// topmost cell.
pub fn ladders(p: &Poset, a: &PArray, i: usize) -> Result<Vec<Ladder>, Error> {
    if i + 1 >= a.cols.len() {
        return Err(Error::Precondition(format!("no column pair at index {i}")));
    }
    let (c, d) = (&a.cols[i], &a.cols[i + 1]);
    let (nc, nd) = (c.len(), d.len());
    let mut parent: Vec<usize> = (0..nc + nd).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (ri, &x) in c.iter().enumerate() {
        for (rj, &y) in d.iter().enumerate() {
            if p.dote(x, y) {
                let (u, v) = (find(&mut parent, ri), find(&mut parent, nc + rj));
                parent[u] = v;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    for v in 0..nc + nd {
        let root = find(&mut parent, v);
        let g = match groups.iter().position(|g| g.0 == root) {
            Some(g) => g,
            None => {
                groups.push((root, Vec::new(), Vec::new()));
                groups.len() - 1
            }
        };
        if v < nc {
            groups[g].1.push(v);
        } else {
            groups[g].2.push(v - nc);
        }
    }
    let mut out: Vec<Ladder> = groups
        .into_iter()
        .map(|(_, left, right)| {
            let balance = match left.len().cmp(&right.len()) {
                std::cmp::Ordering::Equal => Balance::Balanced,
                std::cmp::Ordering::Greater => Balance::LeftUnbalanced,
                std::cmp::Ordering::Less => Balance::RightUnbalanced,
            };
            Ladder { column: i, left, right, balance }
        })
        .collect();
    out.sort_by_key(|l| {
        let top_l = l.left.first().copied().unwrap_or(usize::MAX);
        let top_r = l.right.first().copied().unwrap_or(usize::MAX);
        (top_l.min(top_r), top_r)
    });
    Ok(out)
}

/// Exchanges the cells of an unbalanced ladder between its two columns and
/// re-sorts both columns along `<_P`.
pub fn ladder_swap(p: &Poset, a: &PArray, k: &Ladder) -> Result<PArray, Error> {
    if k.balance == Balance::Balanced {
        return Err(Error::Precondition("cannot swap a balanced ladder".into()));
    }
    let i = k.column;
    if i + 1 >= a.cols.len() {
        return Err(Error::Precondition(format!("no column pair at index {i}")));
    }
    let (c, d) = (&a.cols[i], &a.cols[i + 1]);
    let mut new_c: Vec<usize> = (0..c.len()).filter(|r| !k.left.contains(r)).map(|r| c[r]).collect();
    let mut new_d: Vec<usize> = (0..d.len()).filter(|r| !k.right.contains(r)).map(|r| d[r]).collect();
    new_c.extend(k.right.iter().map(|&r| d[r]));
    new_d.extend(k.left.iter().map(|&r| c[r]));
    let by_order = |x: &usize, y: &usize| {
        if p.lt(*x, *y) {
            std::cmp::Ordering::Less
        } else if p.lt(*y, *x) {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    };
    new_c.sort_by(by_order);
    new_d.sort_by(by_order);
    let mut cols = a.cols.clone();
    cols[i] = new_c;
    cols[i + 1] = new_d;
    let out = PArray { cols };
    if !is_p_array(p, &out) {
        return Err(Error::Inconsistent("ladder swap produced a non-chain column".into()));
    }
    Ok(out)
}

/// No adjacent column pair carries a right-unbalanced ladder.
pub fn is_strong(p: &Poset, t: &Tableau) -> bool {
    let a = PArray::from(t);
    (0..a.cols.len().saturating_sub(1)).all(|i| {
        ladders(p, &a, i)
            .expect("column index in range")
            .iter()
            .all(|l| l.balance != Balance::RightUnbalanced)
    })
}

/// Strongness via matchings: each right column injects into its left
/// neighbour along incomparability.
pub fn is_strong_by_matching(p: &Poset, t: &Tableau) -> bool {
    let cols = t.columns();
    cols.windows(2).all(|w| {
        let (c, d) = (&w[0], &w[1]);
        let mut owner: Vec<Option<usize>> = vec![None; c.len()];
        (0..d.len()).all(|r| {
            let mut seen = vec![false; c.len()];
            augment(p, c, d, r, &mut seen, &mut owner)
        })
    })
}

fn augment(p: &Poset, c: &[usize], d: &[usize], r: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for s in 0..c.len() {
        if seen[s] || !p.dote(c[s], d[r]) {
            continue;
        }
        seen[s] = true;
        if owner[s].is_none_or(|o| augment(p, c, d, o, seen, owner)) {
            owner[s] = Some(r);
            return true;
        }
    }
    false
}
