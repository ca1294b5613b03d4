//! P-arrays, P-tableaux, the inversion statistic, ladders, powersum words,
//! the tableau map on powerful arrays, and enumeration of the standard,
//! strong and powerful classes.

mod enumerate;
mod ladder;
mod powerful;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::poset::Poset;
use crate::qcore::Partition;
use crate::QPoly;

pub use enumerate::{enumerate_class, enumerate_standard, standard_young_tableaux, TableauClass};
pub use ladder::{is_strong, is_strong_by_matching, ladder_swap, ladders, Balance, Ladder};
pub use powerful::{
    enumerate_powerful_arrays, enumerate_powerful_arrays_with_repeats, is_powerful_array, is_powersum_word, tab,
    tab_inverse, PowerfulArray,
};

/// Filling of a partition shape, stored row by row.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, Error> {
        if rows.iter().any(|r| r.is_empty()) || rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidShape(format!("row lengths {:?} are not a partition", lens(&rows))));
        }
        Ok(Tableau { rows })
    }

    pub fn empty() -> Self {
        Tableau { rows: Vec::new() }
    }

    /// Builds a tableau from top-to-bottom columns; column lengths must weakly decrease.
    pub fn from_columns(cols: &[Vec<usize>]) -> Result<Self, Error> {
        if cols.iter().any(|c| c.is_empty()) || cols.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::InvalidShape(format!("column lengths {:?} are not a partition", lens(cols))));
        }
        let height = cols.first().map_or(0, |c| c.len());
        let rows = (0..height)
            .map(|r| cols.iter().take_while(|c| c.len() > r).map(|c| c[r]).collect())
            .collect();
        Ok(Tableau { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(lens(&self.rows)).expect("rows form a partition")
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn num_columns(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    /// Column `j` (0-based) read top to bottom.
    pub fn column(&self, j: usize) -> Vec<usize> {
        self.rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        (0..self.num_columns()).map(|j| self.column(j)).collect()
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, r: usize, c: usize) -> Option<usize> {
        self.rows.get(r).and_then(|row| row.get(c)).copied()
    }

    /// Position of entry `x`, 0-based.
    pub fn position(&self, x: usize) -> Option<(usize, usize)> {
        self.rows.iter().enumerate().find_map(|(i, r)| r.iter().position(|&v| v == x).map(|j| (i, j)))
    }

    /// Columns read bottom to top, left to right.
    pub fn colword(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.size());
        for j in 0..self.num_columns() {
            let mut c = self.column(j);
            c.reverse();
            w.extend(c);
        }
        w
    }

    /// Whether the entries are exactly `1..=n` for `n` cells.
    pub fn is_standard(&self) -> bool {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        self.rows.iter().flatten().all(|&x| x >= 1 && x <= n && !std::mem::replace(&mut seen[x], true))
    }

    /// Whether no entry repeats.
    pub fn is_injective(&self) -> bool {
        let mut v: Vec<usize> = self.rows.iter().flatten().copied().collect();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// The tableau with entry `x` removed; `x` must sit at the end of its row and column.
    pub fn remove_corner(&self, x: usize) -> Option<Tableau> {
        let (r, c) = self.position(x)?;
        if c + 1 != self.rows[r].len() || self.get(r + 1, c).is_some() {
            return None;
        }
        let mut rows = self.rows.clone();
        rows[r].pop();
        if rows[r].is_empty() {
            rows.pop();
        }
        Some(Tableau { rows })
    }

    /// Appends `x` at the bottom of 0-based column `c`, if the result is a shape.
    pub fn add_to_column(&self, c: usize, x: usize) -> Option<Tableau> {
        let h = self.column(c).len();
        if c > 0 && self.column(c - 1).len() <= h {
            return None;
        }
        let mut rows = self.rows.clone();
        if h == rows.len() {
            rows.push(Vec::new());
        }
        if rows[h].len() != c {
            return None;
        }
        rows[h].push(x);
        Some(Tableau { rows })
    }
}

fn lens(v: &[Vec<usize>]) -> Vec<usize> {
    v.iter().map(|r| r.len()).collect()
}

/// Rows separated by `/`, entries by `,`: `1,2,4/3,5/6`.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| crate::qcore::partition_join(r)).collect();
        write!(f, "{}", rows.join("/"))
    }
}

impl FromStr for Tableau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Tableau::empty());
        }
        let rows = s.split('/').map(crate::qcore::parse_usize_list).collect::<Result<Vec<_>, _>>()?;
        Tableau::new(rows)
    }
}

impl serde::Serialize for Tableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Filling of a column composition shape; columns are read top to bottom and
/// may be empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PArray {
    pub cols: Vec<Vec<usize>>,
}

impl PArray {
    pub fn new(cols: Vec<Vec<usize>>) -> Self {
        PArray { cols }
    }

    pub fn column_shape(&self) -> Vec<usize> {
        lens(&self.cols)
    }

    /// The tableau with these columns, if the column lengths weakly decrease.
    pub fn to_tableau(&self) -> Result<Tableau, Error> {
        Tableau::from_columns(&self.cols)
    }

    /// Columns of `self` followed by columns of `other`.
    pub fn concat(&self, other: &PArray) -> PArray {
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        PArray { cols }
    }
}

impl From<&Tableau> for PArray {
    fn from(t: &Tableau) -> Self {
        PArray { cols: t.columns() }
    }
}

/// Every column increases in `<_P`.
pub fn is_p_array(p: &Poset, a: &PArray) -> bool {
    a.cols.iter().all(|c| in_range(p, c) && c.windows(2).all(|w| p.lt(w[0], w[1])))
}

/// Columns increase in `<_P` and no row has a `P`-descent.
pub fn is_p_tableau(p: &Poset, t: &Tableau) -> bool {
    is_p_array(p, &PArray::from(t)) && t.rows.iter().all(|r| r.windows(2).all(|w| !p.lt(w[1], w[0])))
}

fn in_range(p: &Poset, w: &[usize]) -> bool {
    w.iter().all(|&x| x >= 1 && x <= p.n())
}

/// `#{s < t : w_s > w_t and w_s, w_t incomparable}`.
pub fn inv_word(p: &Poset, w: &[usize]) -> usize {
    let mut inv = 0;
    for (s, &a) in w.iter().enumerate() {
        for &b in &w[s + 1..] {
            if a > b && p.incomparable(a, b) {
                inv += 1;
            }
        }
    }
    inv
}

/// Inversions of the column word.
pub fn inv_p(p: &Poset, t: &Tableau) -> usize {
    inv_word(p, &t.colword())
}

/// `q^{inv(w)}` when `w` is a permutation of `[n]`, otherwise zero.
pub fn eval_q(p: &Poset, w: &[usize]) -> QPoly {
    let n = p.n();
    let mut seen = vec![false; n + 1];
    let perm = w.len() == n && w.iter().all(|&x| x >= 1 && x <= n && !std::mem::replace(&mut seen[x], true));
    if perm {
        QPoly::q_pow(inv_word(p, w))
    } else {
        QPoly::zero()
    }
}

/// `Σ q^{inv(T)}` over the given tableaux.
pub fn inv_generating_function<'a>(p: &Poset, ts: impl IntoIterator<Item = &'a Tableau>) -> QPoly {
    let mut counts: Vec<u64> = Vec::new();
    for t in ts {
        let k = inv_p(p, t);
        if counts.len() <= k {
            counts.resize(k + 1, 0);
        }
        counts[k] += 1;
    }
    QPoly::from_counts(&counts)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::poset::{poset_from_hessenberg, ReverseHessenberg};

    pub(crate) fn pm(s: &str) -> Poset {
        poset_from_hessenberg(&s.parse::<ReverseHessenberg>().unwrap())
    }

    pub(crate) fn tb(s: &str) -> Tableau {
        s.parse().unwrap()
    }

    #[test]
    fn text_form_and_columns() {
        let t = tb("1,2,4/3,5/6");
        assert_eq!(t.to_string(), "1,2,4/3,5/6");
        assert_eq!(t.shape(), Partition::new(vec![3, 2, 1]).unwrap());
        assert_eq!(t.columns(), vec![vec![1, 3, 6], vec![2, 5], vec![4]]);
        assert_eq!(Tableau::from_columns(&t.columns()).unwrap(), t);
        assert!("1,2/3,4,5".parse::<Tableau>().is_err());
        assert_eq!("".parse::<Tableau>().unwrap(), Tableau::empty());
    }

    #[test]
    fn colwords() {
        assert_eq!(tb("1,2,3").colword(), vec![1, 2, 3]);
        assert_eq!(tb("1/2/3").colword(), vec![3, 2, 1]);
        assert_eq!(tb("1,2/3").colword(), vec![3, 1, 2]);
    }

    #[test]
    fn p_array_and_tableau_checks() {
        let p = pm("0,0,1,1,3");
        let a = PArray::new(vec![vec![3, 5], vec![1, 3, 5], vec![4], vec![1, 4]]);
        assert!(is_p_array(&p, &a));
        assert!(is_p_tableau(&p, &tb("1")));
        assert!(is_p_tableau(&pm("0,0,1,1,3,4,5"), &tb("2,1,3/5,4/7,6")));
        assert!(!is_p_tableau(&p, &tb("3,1,2,4,5")));
    }

    #[test]
    fn inversions() {
        let p = pm("0,0,1,1,3");
        assert_eq!(inv_word(&p, &[1, 2, 3, 4, 5]), 0);
        assert_eq!(inv_p(&p, &tb("5,4,3,2,1")), 5);
        assert_eq!(inv_p(&p, &tb("1,2,3/4,5")), 2);
        let anti = pm("0,0,0");
        assert_eq!(eval_q(&anti, &[1, 2, 3]), QPoly::one());
        assert!(eval_q(&anti, &[1, 1, 2]).is_zero());
        assert_eq!(eval_q(&anti, &[3, 1, 2]), QPoly::q_pow(2));
    }

    #[test]
    fn corner_moves() {
        let t = tb("1,2,4/3,5/6");
        assert_eq!(t.remove_corner(6).unwrap(), tb("1,2,4/3,5"));
        assert!(t.remove_corner(5).is_some());
        assert!(t.remove_corner(2).is_none());
        assert_eq!(tb("1,2/3").add_to_column(1, 4).unwrap(), tb("1,2/3,4"));
        assert!(tb("1,2/3").add_to_column(0, 4).is_some());
        assert!(tb("1/2").add_to_column(1, 3).is_some());
        assert!(tb("1,2").add_to_column(1, 3).is_none());
        assert_eq!(Tableau::empty().add_to_column(0, 1).unwrap(), tb("1"));
    }
}
