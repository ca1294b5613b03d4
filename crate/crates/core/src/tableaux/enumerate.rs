use std::str::FromStr;

use crate::error::Error;
use crate::poset::Poset;
use crate::qcore::{compositions_with_sort, Partition};

use super::powerful::{enumerate_powerful_arrays, tab_unchecked};
use super::{is_strong, Tableau};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TableauClass {
    Standard,
    Strong,
    Powerful,
}

impl FromStr for TableauClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "standard" => Ok(TableauClass::Standard),
            "strong" => Ok(TableauClass::Strong),
            "powerful" => Ok(TableauClass::Powerful),
            _ => Err(Error::Parse(format!("unknown tableau class {s:?}"))),
        }
    }
}

/// Bijective `P`-tableaux of shape `λ`, sorted by column word.
pub fn enumerate_standard(p: &Poset, lambda: &Partition) -> Vec<Tableau> {
    if lambda.size() != p.n() {
        return Vec::new();
    }
    let heights = lambda.conjugate();
    let mut cols: Vec<Vec<usize>> = heights.parts().iter().map(|&h| Vec::with_capacity(h)).collect();
    let mut out = Vec::new();
    fill_columns(p, heights.parts(), 0, 0, 0, &mut cols, &mut out);
    sort_by_colword(&mut out);
    out
}

fn fill_columns(
    p: &Poset,
    heights: &[usize],
    j: usize,
    r: usize,
    used: u64,
    cols: &mut Vec<Vec<usize>>,
    out: &mut Vec<Tableau>,
) {
    if j == heights.len() {
        out.push(Tableau::from_columns(cols).expect("shape is a partition"));
        return;
    }
    if r == heights[j] {
        fill_columns(p, heights, j + 1, 0, used, cols, out);
        return;
    }
    let mut cand = p.full_mask() & !used;
    if r > 0 {
        cand &= p.above_mask(cols[j][r - 1]);
    }
    if j > 0 {
        cand &= !p.below_mask(cols[j - 1][r]);
    }
    while cand != 0 {
        let x = cand.trailing_zeros() as usize + 1;
        cand &= cand - 1;
        cols[j].push(x);
        fill_columns(p, heights, j, r + 1, used | 1 << (x - 1), cols, out);
        cols[j].pop();
    }
}

fn sort_by_colword(ts: &mut [Tableau]) {
    ts.sort_by_cached_key(|t| t.colword());
}

/// Standard, strong, or powerful bijective `P`-tableaux of shape `λ`.
pub fn enumerate_class(p: &Poset, lambda: &Partition, class: TableauClass) -> Vec<Tableau> {
    match class {
        TableauClass::Standard => enumerate_standard(p, lambda),
        TableauClass::Strong => enumerate_standard(p, lambda).into_iter().filter(|t| is_strong(p, t)).collect(),
        TableauClass::Powerful => {
            let mut out: Vec<Tableau> = compositions_with_sort(lambda)
                .iter()
                .flat_map(|alpha| enumerate_powerful_arrays(p, alpha))
                .map(|a| tab_unchecked(&a))
                .collect();
            sort_by_colword(&mut out);
            out
        }
    }
}

/// Standard Young tableaux of shape `λ`, sorted by column word.
pub fn standard_young_tableaux(lambda: &Partition) -> Vec<Tableau> {
    let n = lambda.size();
    let chain = Poset::from_relation(n, |a, b| a < b).expect("a chain is a poset");
    enumerate_standard(&chain, lambda)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{pm, tb};
    use super::super::{inv_p, is_p_tableau, is_strong_by_matching, tab_inverse};
    use super::*;
    use crate::poset::{enumerate_hessenberg, poset_from_hessenberg};
    use crate::qcore::partitions;
    use std::collections::HashSet;

    fn pt(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn chain_and_column_counts() {
        let c = Poset::from_relation(4, |a, b| a < b).unwrap();
        assert_eq!(enumerate_standard(&c, &pt(&[4])), vec![tb("1,2,3,4")]);
        assert_eq!(enumerate_standard(&c, &pt(&[1, 1, 1, 1])), vec![tb("1/2/3/4")]);
        for (shape, count) in [(vec![2, 2], 2), (vec![3, 2], 5), (vec![3, 3], 5), (vec![4, 4], 14), (vec![2, 1, 1], 3)] {
            assert_eq!(standard_young_tableaux(&pt(&shape)).len(), count);
        }
        assert_eq!(standard_young_tableaux(&pt(&[3, 2, 1])).len(), 16);
        assert_eq!(standard_young_tableaux(&Partition::empty()), vec![Tableau::empty()]);
    }

    #[test]
    fn appendix_shape_contains_displayed_tableaux() {
        let p = pm("0,0,1,1,3");
        let st = enumerate_standard(&p, &pt(&[3, 2]));
        for s in ["1,2,3/4,5", "2,1,3/5,4", "1,3,2/4,5"] {
            assert!(st.contains(&tb(s)), "{s}");
        }
    }

    #[test]
    fn figure_powerful_tableaux() {
        let p = pm("0,0,1,1,3,4,5");
        let pow = enumerate_class(&p, &pt(&[3, 2, 2]), TableauClass::Powerful);
        let got: HashSet<Tableau> = pow.iter().cloned().collect();
        let expect: HashSet<Tableau> = ["2,1,3/5,4/7,6", "1,2,3/4,5/6,7", "1,3,2/4,5/6,7"].iter().map(|s| tb(s)).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn class_examples() {
        let p = pm("0,0,1,1,3");
        let pow = enumerate_class(&p, &pt(&[3, 1, 1]), TableauClass::Powerful);
        assert_eq!(pow.len(), 2);
        let mut invs: Vec<usize> = pow.iter().map(|t| inv_p(&p, t)).collect();
        invs.sort();
        assert_eq!(invs, vec![2, 3]);
        assert!(pow.iter().all(|t| is_strong(&p, t)));
        let q = pm("0,0,1,1,2,4");
        assert_eq!(enumerate_class(&q, &pt(&[4, 2]), TableauClass::Powerful).len(), 10);
        assert_eq!(enumerate_class(&q, &pt(&[4, 2]), TableauClass::Strong).len(), 6);
    }

    #[test]
    fn empty_poset() {
        let p = pm("");
        for c in [TableauClass::Standard, TableauClass::Strong, TableauClass::Powerful] {
            assert_eq!(enumerate_class(&p, &Partition::empty(), c), vec![Tableau::empty()]);
        }
    }

    /// Inclusions strong ⊆ powerful ⊆ standard, the two strongness tests,
    /// and the collapse on two-column shapes.
    #[test]
    fn class_inclusions_small() {
        for n in 0..=6 {
            for m in enumerate_hessenberg(n) {
                let p = poset_from_hessenberg(&m);
                for lambda in partitions(n) {
                    let st = enumerate_standard(&p, &lambda);
                    assert!(st.iter().all(|t| is_p_tableau(&p, t) && t.is_standard()));
                    let stset: HashSet<&Tableau> = st.iter().collect();
                    let pow = enumerate_class(&p, &lambda, TableauClass::Powerful);
                    let powset: HashSet<&Tableau> = pow.iter().collect();
                    assert_eq!(powset.len(), pow.len());
                    assert!(powset.is_subset(&stset));
                    for t in &st {
                        let strong = is_strong(&p, t);
                        assert_eq!(strong, is_strong_by_matching(&p, t), "{m} {t}");
                        if strong {
                            assert!(powset.contains(t), "{m} {t}");
                        }
                        assert_eq!(powset.contains(t), tab_inverse(&p, t).is_some());
                    }
                    if lambda.part(0) <= 2 {
                        let strong: HashSet<&Tableau> = st.iter().filter(|t| is_strong(&p, t)).collect();
                        assert_eq!(strong, powset, "{m} {lambda}");
                    }
                }
            }
        }
    }
}
