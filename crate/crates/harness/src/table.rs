//! The published list of shapes whose powerful-tableau count overshoots
//! `c_λ(q)` for connected incomparability graphs on at most 7 elements.

use std::collections::BTreeMap;

use csflab_core::poset::ReverseHessenberg;
use csflab_core::qcore::Partition;
use csflab_core::QPoly;

use crate::HarnessError;

const RAW: &str = include_str!("../data/overcount_table.tsv");

/// Largest `n` the table covers.
pub const TABLE_MAX_N: usize = 7;

/// Smallest `n` with a nonzero entry.
pub const TABLE_MIN_N: usize = 5;

#[derive(Clone, Debug, Default)]
pub struct OvercountTable {
    rows: BTreeMap<(Vec<usize>, Partition), QPoly>,
}

impl OvercountTable {
    pub fn load() -> Result<Self, HarnessError> {
        Self::parse(RAW)
    }

    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut rows = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| HarnessError::Table(format!("line {}: {what}", i + 1));
            let cells: Vec<&str> = line.split('\t').collect();
            let [n, m, lambda, poly] = cells[..] else {
                return Err(bad("expected four tab-separated cells"));
            };
            let n: usize = n.parse().map_err(|_| bad("bad size"))?;
            let m: ReverseHessenberg = m.parse().map_err(|_| bad("bad Hessenberg function"))?;
            let lambda: Partition = lambda.parse().map_err(|_| bad("bad partition"))?;
            let coeffs: Vec<i64> = poly.split(',').map(|c| c.parse()).collect::<Result<_, _>>().map_err(|_| bad("bad coefficients"))?;
            if m.n() != n || lambda.size() != n {
                return Err(bad("sizes disagree"));
            }
            if rows.insert((m.values().to_vec(), lambda), QPoly::from_ints(&coeffs)).is_some() {
                return Err(bad("duplicate row"));
            }
        }
        Ok(OvercountTable { rows })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The listed discrepancy, zero for pairs not in the table.
    pub fn lookup(&self, m: &ReverseHessenberg, lambda: &Partition) -> QPoly {
        self.rows.get(&(m.values().to_vec(), lambda.clone())).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[usize], &Partition, &QPoly)> {
        self.rows.iter().map(|((m, l), p)| (m.as_slice(), l, p))
    }

    pub fn count_for(&self, n: usize) -> usize {
        self.rows.keys().filter(|(m, _)| m.len() == n).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_loads() {
        let t = OvercountTable::load().unwrap();
        assert_eq!(t.count_for(5), 1);
        assert_eq!(t.count_for(6), 11);
        assert_eq!(t.len(), t.count_for(5) + t.count_for(6) + t.count_for(7));
        let m: ReverseHessenberg = "0,0,1,1,3".parse().unwrap();
        assert_eq!(t.lookup(&m, &"3,2".parse().unwrap()), QPoly::from_ints(&[0, 0, 0, 1]));
        assert!(t.lookup(&m, &"4,1".parse().unwrap()).is_zero());
        let m6: ReverseHessenberg = "0,0,1,1,1,3".parse().unwrap();
        assert_eq!(t.lookup(&m6, &"4,2".parse().unwrap()), QPoly::from_ints(&[0, 0, 0, 0, 1, 2, 1]));
    }

    #[test]
    fn malformed_rows_rejected() {
        assert!(OvercountTable::parse("5\t0,0,1,1,3\t3,2").is_err());
        assert!(OvercountTable::parse("5\t0,0,1,1\t3,2\t1").is_err());
        assert!(OvercountTable::parse("5\t0,0,1,1,3\t3,2\t1\n5\t0,0,1,1,3\t3,2\t1").is_err());
        assert!(OvercountTable::parse("# header only\n").unwrap().is_empty());
    }
}
