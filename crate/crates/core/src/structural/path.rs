use crate::error::Error;
use crate::poset::{Poset, ReverseHessenberg};
use crate::qcore::Composition;
use crate::tableaux::{is_powerful_array, PowerfulArray};

/// 1-based positions of the row maxima of a bijective powerful array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PeakVector {
    pub r: Vec<usize>,
}

impl PeakVector {
    /// Both adjacency conditions hold for every pair of consecutive rows.
    pub fn is_admissible(&self, alpha: &Composition) -> bool {
        let a = alpha.parts();
        let r = &self.r;
        if r.len() != a.len() || r.iter().zip(a).any(|(&ri, &ai)| ri == 0 || ri > ai) {
            return false;
        }
        (1..r.len()).all(|i| if r[i] == 1 { r[i - 1] != a[i].min(a[i - 1]) } else { r[i - 1] != 1 })
    }
}

fn require_path(p: &Poset) -> Result<(), Error> {
    if p.hessenberg() != Some(ReverseHessenberg::path(p.n())) {
        return Err(Error::Precondition("the poset is not the path order".into()));
    }
    Ok(())
}

/// The peak vector of a bijective powerful array over the path order.
pub fn peak(p: &Poset, a: &PowerfulArray) -> Result<PeakVector, Error> {
    require_path(p)?;
    let mut seen: Vec<usize> = a.rows.iter().flatten().copied().collect();
    seen.sort_unstable();
    if seen != (1..=p.n()).collect::<Vec<_>>() || !is_powerful_array(p, a) {
        return Err(Error::Precondition(format!("{a} is not a bijective powerful array")));
    }
    let r = a
        .rows
        .iter()
        .map(|row| row.iter().enumerate().max_by_key(|&(_, &x)| x).map(|(i, _)| i + 1).unwrap())
        .collect();
    Ok(PeakVector { r })
}

/// The array whose row `i` holds the block after `α_1 + … + α_{i-1}`,
/// rising to its maximum at position `r_i` and then falling.
pub fn materialize(alpha: &Composition, r: &PeakVector) -> Result<PowerfulArray, Error> {
    if r.r.len() != alpha.len() || r.r.iter().zip(alpha.parts()).any(|(&ri, &ai)| ri == 0 || ri > ai) {
        return Err(Error::Precondition(format!("{:?} does not fit {alpha}", r.r)));
    }
    let mut z = 0;
    let mut rows = Vec::with_capacity(alpha.len());
    for (&ai, &ri) in alpha.parts().iter().zip(&r.r) {
        let mut row: Vec<usize> = (z + 1..z + ri).collect();
        row.extend((z + ri..=z + ai).rev());
        rows.push(row);
        z += ai;
    }
    Ok(PowerfulArray::new(rows))
}

/// Inversions of the array with peak vector `r`, in closed form.
pub fn peak_inv(alpha: &Composition, r: &PeakVector) -> usize {
    let a = alpha.parts();
    let l = a.len();
    (0..l)
        .map(|i| {
            let b = usize::from(i + 1 < l && (r.r[i + 1] != 1 || r.r[i] > a[i + 1]));
            a[i] - r.r[i] + b
        })
        .sum()
}

/// All bijective powerful arrays of row shape `α` over the path order,
/// generated from admissible peak vectors.
pub fn bpa_enumerate(p: &Poset, alpha: &Composition) -> Result<Vec<PowerfulArray>, Error> {
    require_path(p)?;
    if alpha.size() != p.n() {
        return Err(Error::Precondition(format!("{alpha} is not a composition of {}", p.n())));
    }
    let mut out = Vec::new();
    let mut r = PeakVector { r: vec![1; alpha.len()] };
    loop {
        if r.is_admissible(alpha) {
            out.push(materialize(alpha, &r)?);
        }
        let Some(i) = (0..alpha.len()).rev().find(|&i| r.r[i] < alpha.parts()[i]) else {
            break;
        };
        r.r[i] += 1;
        for x in &mut r.r[i + 1..] {
            *x = 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::poset_from_hessenberg;
    use crate::qcore::compositions;
    use crate::QPoly;
    use crate::tableaux::{enumerate_powerful_arrays, inv_p, tab};

    fn q_int(k: usize) -> QPoly {
        (0..k).map(QPoly::q_pow).fold(QPoly::zero(), |a, b| a + b)
    }

    fn path(n: usize) -> Poset {
        poset_from_hessenberg(&ReverseHessenberg::path(n))
    }

    #[test]
    fn single_row_gives_q_integer() {
        for n in 1..=6 {
            let p = path(n);
            let alpha = Composition::new(vec![n]).unwrap();
            let arrays = bpa_enumerate(&p, &alpha).unwrap();
            assert_eq!(arrays.len(), n);
            let total: QPoly = arrays.iter().map(|a| QPoly::q_pow(inv_p(&p, &tab(&p, a).unwrap()))).fold(QPoly::zero(), |a, b| a + b);
            assert_eq!(total, q_int(n));
        }
    }

    #[test]
    fn enumeration_matches_search() {
        for n in 1..=7 {
            let p = path(n);
            for alpha in compositions(n) {
                let mut fast = bpa_enumerate(&p, &alpha).unwrap();
                let mut slow = enumerate_powerful_arrays(&p, &alpha);
                fast.sort_by(|x, y| x.rows.cmp(&y.rows));
                slow.sort_by(|x, y| x.rows.cmp(&y.rows));
                assert_eq!(fast, slow, "{alpha}");
                for a in &fast {
                    let r = peak(&p, a).unwrap();
                    assert!(r.is_admissible(&alpha));
                    assert_eq!(&materialize(&alpha, &r).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn closed_form_inversions() {
        for n in 1..=7 {
            let p = path(n);
            for alpha in compositions(n) {
                for a in bpa_enumerate(&p, &alpha).unwrap() {
                    let r = peak(&p, &a).unwrap();
                    let direct = inv_p(&p, &tab(&p, &a).unwrap());
                    assert_eq!(peak_inv(&alpha, &r), direct, "{alpha} {a}");
                }
            }
        }
    }

    fn bpa_sum(p: &Poset, alpha: &Composition) -> QPoly {
        bpa_enumerate(p, alpha)
            .unwrap()
            .iter()
            .map(|a| QPoly::q_pow(peak_inv(alpha, &peak(p, a).unwrap())))
            .fold(QPoly::zero(), |a, b| a + b)
    }

    #[test]
    fn generating_function_recurrence() {
        for n in 1..=8 {
            let p = path(n);
            for alpha in compositions(n) {
                let parts = alpha.parts();
                let (last, init) = parts.split_last().unwrap();
                let expected = init.iter().fold(QPoly::q_pow(init.len()) * q_int(*last), |acc, &ai| acc * q_int(ai - 1));
                assert_eq!(bpa_sum(&p, &alpha), expected, "{alpha}");
            }
        }
    }

    #[test]
    fn generating_function_by_sorted_shape() {
        use std::collections::BTreeMap;
        for n in 1..=8 {
            let p = path(n);
            let mut got: BTreeMap<_, QPoly> = BTreeMap::new();
            let mut displayed: BTreeMap<_, QPoly> = BTreeMap::new();
            for alpha in compositions(n) {
                let parts = alpha.parts();
                let term = parts[1..]
                    .iter()
                    .fold(QPoly::q_pow(parts.len() - 1) * q_int(parts[0]), |acc, &ai| acc * q_int(ai - 1));
                *displayed.entry(alpha.sort()).or_insert_with(QPoly::zero) += term;
                *got.entry(alpha.sort()).or_insert_with(QPoly::zero) += bpa_sum(&p, &alpha);
            }
            assert_eq!(got, displayed, "n = {n}");
        }
    }

    #[test]
    fn rejects_other_posets() {
        let p = poset_from_hessenberg(&ReverseHessenberg::new(vec![0, 0, 0]).unwrap());
        assert!(bpa_enumerate(&p, &Composition::new(vec![3]).unwrap()).is_err());
        assert!(peak(&p, &PowerfulArray::new(vec![vec![1, 2, 3]])).is_err());
    }
}
