use std::fmt;

use crate::error::Error;
use crate::poset::Poset;
use crate::qcore::Composition;

use super::Tableau;

/// Rows of a composition-shaped filling.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PowerfulArray {
    pub rows: Vec<Vec<usize>>,
}

impl PowerfulArray {
    pub fn new(rows: Vec<Vec<usize>>) -> Self {
        PowerfulArray { rows }
    }

    pub fn row_shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }
}

impl fmt::Display for PowerfulArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| crate::qcore::partition_join(r)).collect();
        write!(f, "{}", rows.join("/"))
    }
}

/// No `P`-descent, and the last letter is the only right-to-left `P`-minimum.
pub fn is_powersum_word(p: &Poset, w: &[usize]) -> bool {
    if w.windows(2).any(|x| p.lt(x[1], x[0])) {
        return false;
    }
    let k = w.len();
    (0..k.saturating_sub(1)).all(|i| w[i + 1..].iter().any(|&y| !p.lt(w[i], y)))
}

/// Rows are powersum words, columns increase, and each row's last entry is
/// below everything strictly south-east of it.
pub fn is_powerful_array(p: &Poset, a: &PowerfulArray) -> bool {
    if a.rows.iter().any(|r| r.is_empty() || r.iter().any(|&x| x == 0 || x > p.n())) {
        return false;
    }
    if !a.rows.iter().all(|r| is_powersum_word(p, r)) {
        return false;
    }
    for (r, row) in a.rows.iter().enumerate() {
        let last = *row.last().unwrap();
        for lower in &a.rows[r + 1..] {
            for (t, &x) in lower.iter().enumerate() {
                if t < row.len() && !p.lt(row[t], x) {
                    return false;
                }
                if t >= row.len() && !p.lt(last, x) {
                    return false;
                }
            }
        }
    }
    true
}

/// Pushes every entry up within its column.
pub fn tab(p: &Poset, a: &PowerfulArray) -> Result<Tableau, Error> {
    if !is_powerful_array(p, a) {
        return Err(Error::Precondition(format!("{a} is not a powerful array")));
    }
    Ok(tab_unchecked(a))
}

pub(crate) fn tab_unchecked(a: &PowerfulArray) -> Tableau {
    let width = a.rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let cols: Vec<Vec<usize>> = (0..width)
        .map(|t| a.rows.iter().filter(|r| r.len() > t).map(|r| r[t]).collect())
        .collect();
    Tableau::from_columns(&cols).expect("pushed columns form a partition shape")
}

/// The unique powerful array mapping to `t`, if any.
pub fn tab_inverse(p: &Poset, t: &Tableau) -> Option<PowerfulArray> {
    let mut cols = t.columns();
    let mut rows = Vec::new();
    while cols.first().is_some_and(|c| !c.is_empty()) {
        let width = cols.iter().take_while(|c| !c.is_empty()).count();
        let head: Vec<usize> = cols[..width].iter().map(|c| c[0]).collect();
        let cut = (0..head.len())
            .find(|&i| head[i + 1..].iter().all(|&y| p.lt(head[i], y)))
            .expect("the last letter is always a right-to-left minimum");
        let row = head[..=cut].to_vec();
        if !is_powersum_word(p, &row) {
            return None;
        }
        for c in cols.iter_mut().take(cut + 1) {
            c.remove(0);
        }
        if cols.windows(2).any(|w| w[0].len() < w[1].len()) {
            return None;
        }
        rows.push(row);
    }
    let a = PowerfulArray { rows };
    (is_powerful_array(p, &a) && tab_unchecked(&a) == *t).then_some(a)
}

/// All bijective powerful arrays of row shape `alpha` on `[n]`.
pub fn enumerate_powerful_arrays(p: &Poset, alpha: &Composition) -> Vec<PowerfulArray> {
    if alpha.size() != p.n() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut search = Search {
        p,
        shape: alpha.parts(),
        rows: alpha.parts().iter().map(|&l| Vec::with_capacity(l)).collect(),
        repeats: false,
        out: &mut out,
    };
    search.fill(0, 0, 0);
    out
}

/// Powerful arrays of row shape `alpha` with letters from `[n]`, repetition allowed.
pub fn enumerate_powerful_arrays_with_repeats(p: &Poset, alpha: &Composition) -> Vec<PowerfulArray> {
    let mut out = Vec::new();
    let mut search = Search {
        p,
        shape: alpha.parts(),
        rows: alpha.parts().iter().map(|&l| Vec::with_capacity(l)).collect(),
        repeats: true,
        out: &mut out,
    };
    search.fill(0, 0, 0);
    out
}

struct Search<'a> {
    p: &'a Poset,
    shape: &'a [usize],
    rows: Vec<Vec<usize>>,
    repeats: bool,
    out: &'a mut Vec<PowerfulArray>,
}

impl Search<'_> {
    fn fill(&mut self, r: usize, t: usize, used: u64) {
        if r == self.shape.len() {
            self.out.push(PowerfulArray { rows: self.rows.clone() });
            return;
        }
        if t == self.shape[r] {
            let row = &self.rows[r];
            let ok = (0..row.len() - 1).all(|i| row[i + 1..].iter().any(|&y| !self.p.lt(row[i], y)));
            if ok {
                self.fill(r + 1, 0, used);
            }
            return;
        }
        let mut cand = self.p.full_mask();
        if !self.repeats {
            cand &= !used;
        }
        if t > 0 {
            cand &= !self.p.below_mask(self.rows[r][t - 1]);
        }
        if let Some(up) = (0..r).rev().find(|&s| self.shape[s] > t) {
            cand &= self.p.above_mask(self.rows[up][t]);
        }
        for s in 0..r {
            if self.shape[s] <= t {
                cand &= self.p.above_mask(*self.rows[s].last().unwrap());
            }
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize + 1;
            cand &= cand - 1;
            self.rows[r].push(x);
            self.fill(r, t + 1, used | 1 << (x - 1));
            self.rows[r].pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{pm, tb};
    use super::super::{enumerate_standard, is_p_tableau};
    use super::*;
    use crate::poset::{enumerate_hessenberg, poset_from_hessenberg};
    use crate::qcore::{compositions, compositions_with_sort, partitions};
    use std::collections::HashSet;

    fn six_element() -> Poset {
        Poset::from_covers(6, &[(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 6)]).unwrap()
    }

    #[test]
    fn powersum_words() {
        let c2 = Poset::from_relation(2, |a, b| a < b).unwrap();
        assert!(is_powersum_word(&c2, &[1]));
        assert!(!is_powersum_word(&c2, &[1, 2]));
        assert!(!is_powersum_word(&c2, &[2, 1]));
        let anti = pm("0,0");
        assert!(is_powersum_word(&anti, &[2, 1]));
    }

    /// Powersum permutations of the path order are `1, 2, ..., r-1, n, n-1, ..., r`.
    #[test]
    fn path_powersum_permutations_are_unimodal_runs() {
        for n in 1..=7 {
            let p = poset_from_hessenberg(&crate::poset::ReverseHessenberg::path(n));
            let expect: HashSet<Vec<usize>> =
                (1..=n).map(|r| (1..r).chain((r..=n).rev()).collect()).collect();
            let found: HashSet<Vec<usize>> = enumerate_standard(&p, &crate::qcore::Partition::new(vec![n]).unwrap())
                .into_iter()
                .map(|t| t.rows()[0].clone())
                .filter(|w| is_powersum_word(&p, w))
                .collect();
            assert_eq!(found, expect);
        }
    }

    #[test]
    fn tab_on_six_element_example() {
        let p = six_element();
        let a = PowerfulArray::new(vec![vec![1], vec![3, 2, 4], vec![6, 5]]);
        assert!(is_powerful_array(&p, &a));
        let t = tab(&p, &a).unwrap();
        assert_eq!(t, tb("1,2,4/3,5/6"));
        assert!(is_p_tableau(&p, &t));
        assert_eq!(tab_inverse(&p, &t), Some(a));
    }

    #[test]
    fn trivial_shapes() {
        let p = pm("0,0,1,1,3");
        let row = PowerfulArray::new(vec![vec![1, 2, 3, 4, 5]]);
        assert_eq!(tab(&p, &row).unwrap(), tb("1,2,3,4,5"));
        assert_eq!(tab_inverse(&p, &tb("1,2,3,4,5")), Some(row));
        let c = poset_from_hessenberg(&"0,1,2".parse().unwrap());
        let col = PowerfulArray::new(vec![vec![1], vec![2], vec![3]]);
        assert_eq!(tab(&c, &col).unwrap(), tb("1/2/3"));
        assert!(tab(&p, &PowerfulArray::new(vec![vec![3, 1]])).is_err());
        assert!(tab_inverse(&p, &tb("1,3,2/4,5")).is_some());
    }

    #[test]
    fn tab_round_trips() {
        for n in 0..=6 {
            for m in enumerate_hessenberg(n) {
                let p = poset_from_hessenberg(&m);
                for alpha in compositions(n) {
                    let arrays = enumerate_powerful_arrays(&p, &alpha);
                    let mut images = HashSet::new();
                    for a in &arrays {
                        assert!(is_powerful_array(&p, a));
                        let t = tab(&p, a).unwrap();
                        assert!(is_p_tableau(&p, &t));
                        assert_eq!(tab_inverse(&p, &t).as_ref(), Some(a), "{m} {a}");
                        assert!(images.insert(t));
                    }
                }
                for lambda in partitions(n) {
                    for t in enumerate_standard(&p, &lambda) {
                        if let Some(a) = tab_inverse(&p, &t) {
                            assert_eq!(tab(&p, &a).unwrap(), t);
                            assert!(compositions_with_sort(&lambda).iter().any(|c| c.parts() == a.row_shape()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn repeated_letters_small_shapes() {
        let p = pm("0,0,1");
        for alpha in compositions(3) {
            let arrays = enumerate_powerful_arrays_with_repeats(&p, &alpha);
            let mut images = HashSet::new();
            for a in &arrays {
                let t = tab(&p, a).unwrap();
                assert_eq!(tab_inverse(&p, &t).as_ref(), Some(a));
                assert!(images.insert(t));
            }
            let bij = enumerate_powerful_arrays(&p, &alpha);
            assert!(bij.iter().all(|a| arrays.contains(a)));
        }
    }
}
