use std::collections::BTreeSet;

use crate::error::Error;
use crate::poset::Poset;
use crate::tableaux::{is_powersum_word, tab, PowerfulArray, Tableau};

/// A two-letter powersum word and a longer one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FactorPair {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Least 1-based `r` with `w_r` and `w_{r+1}` incomparable.
pub fn r_index(p: &Poset, w: &[usize]) -> Result<usize, Error> {
    if w.len() < 2 {
        return Err(Error::Precondition("r needs a word of length at least 2".into()));
    }
    w.windows(2)
        .position(|x| p.dote(x[0], x[1]))
        .map(|i| i + 1)
        .ok_or_else(|| Error::Precondition(format!("{w:?} has no incomparable neighbours")))
}

/// Powersum words using each element of `mask` exactly once.
pub fn powersum_permutations(p: &Poset, mask: u64) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(p: &Poset, left: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            if is_powersum_word(p, cur) {
                out.push(cur.clone());
            }
            return;
        }
        let mut cand = left;
        if let Some(&prev) = cur.last() {
            cand &= !p.below_mask(prev);
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize + 1;
            cand &= cand - 1;
            cur.push(x);
            rec(p, left & !(1 << (x - 1)), cur, out);
            cur.pop();
        }
    }
    if mask != 0 {
        rec(p, mask, &mut cur, &mut out);
    }
    out
}

/// Splits a powersum word of length `k > 2` into a two-letter and a
/// `(k-2)`-letter powersum word.
pub fn factorize(p: &Poset, w: &[usize]) -> Result<FactorPair, Error> {
    let k = w.len();
    if k <= 2 || !is_powersum_word(p, w) {
        return Err(Error::Precondition(format!("{w:?} is not a powersum word of length > 2")));
    }
    let r = r_index(p, w)?;
    let at = |i: usize| w[i - 1];
    let later_not_above = r > 1 && (r + 2..=k).any(|j| !p.lt(at(r - 1), at(j)));
    let cases = [
        r == 1,
        r > 1 && p.lt(at(r - 1), at(r + 1)),
        r > 1 && p.dote(at(r - 1), at(r + 1)) && later_not_above,
        r > 1 && p.dote(at(r - 1), at(r + 1)) && !later_not_above,
    ];
    if cases.iter().filter(|&&c| c).count() != 1 {
        return Err(Error::Inconsistent(format!("factorization cases of {w:?} are not exclusive: {cases:?}")));
    }
    let without = |skip: &[usize]| -> Vec<usize> { (1..=k).filter(|i| !skip.contains(i)).map(at).collect() };
    let pair = if cases[0] {
        FactorPair { a: w[..2].to_vec(), b: w[2..].to_vec() }
    } else if cases[1] {
        FactorPair { a: vec![at(r), at(r + 1)], b: without(&[r, r + 1]) }
    } else if cases[2] {
        FactorPair { a: vec![at(r + 1), at(r)], b: without(&[r, r + 1]) }
    } else {
        if r != 2 {
            return Err(Error::Inconsistent(format!("{w:?} reaches the last case with r = {r}")));
        }
        FactorPair { a: vec![at(3), at(1)], b: without(&[1, 3]) }
    };
    if !is_powersum_word(p, &pair.a) || !is_powersum_word(p, &pair.b) {
        return Err(Error::Inconsistent(format!("factors of {w:?} are not powersum words")));
    }
    Ok(pair)
}

/// Pairs of powersum words with disjoint supports covering `[n]`, the
/// first of length 2.
pub fn standard_pairs(p: &Poset) -> Vec<FactorPair> {
    let n = p.n();
    let mut out = Vec::new();
    for x in 1..=n {
        for y in x + 1..=n {
            if !p.dote(x, y) {
                continue;
            }
            let rest = p.full_mask() & !(1 << (x - 1)) & !(1 << (y - 1));
            let bs = powersum_permutations(p, rest);
            for a in [vec![x, y], vec![y, x]] {
                for b in &bs {
                    out.push(FactorPair { a: a.clone(), b: b.clone() });
                }
            }
        }
    }
    out.sort();
    out
}

fn check_size(p: &Poset) -> Result<(), Error> {
    if p.n() <= 4 {
        return Err(Error::Precondition(format!("the complement needs n > 4, got {}", p.n())));
    }
    Ok(())
}

/// Standard pairs outside the image of [`factorize`], cross-checked against
/// the five membership conditions.
pub fn complemented_set(p: &Poset) -> Result<Vec<FactorPair>, Error> {
    check_size(p)?;
    let image: BTreeSet<FactorPair> =
        powersum_permutations(p, p.full_mask()).iter().map(|w| factorize(p, w)).collect::<Result<_, _>>()?;
    let all = standard_pairs(p);
    if image.iter().any(|f| all.binary_search(f).is_err()) {
        return Err(Error::Inconsistent("a factorization left the standard pairs".into()));
    }
    let by_complement: Vec<FactorPair> = all.into_iter().filter(|f| !image.contains(f)).collect();
    let by_conditions = complemented_set_by_conditions(p)?;
    if by_complement != by_conditions {
        return Err(Error::Inconsistent(format!(
            "complement has {} pairs but the conditions select {}",
            by_complement.len(),
            by_conditions.len()
        )));
    }
    Ok(by_complement)
}

/// Standard pairs selected directly by the membership conditions.
pub fn complemented_set_by_conditions(p: &Poset) -> Result<Vec<FactorPair>, Error> {
    check_size(p)?;
    let mut out = Vec::new();
    for f in standard_pairs(p) {
        if membership_case(p, &f)?.is_some() {
            out.push(f);
        }
    }
    Ok(out)
}

/// The first of the five membership conditions that `(a, b)` meets.
fn membership_case(p: &Poset, f: &FactorPair) -> Result<Option<usize>, Error> {
    let (a, b) = (&f.a, &f.b);
    let r = r_index(p, b)?;
    let (a1, a2) = (a[0], a[1]);
    let bj = |j: usize| b[j - 1];
    let a2_below_all = b.iter().all(|&x| p.lt(a2, x));
    let a1_below_rest = b[1..].iter().all(|&x| p.lt(a1, x));
    let next = b.get(r).copied();
    let conds = [
        a2_below_all && p.lt(a1, bj(1)),
        a2_below_all && p.dote(a1, bj(1)) && a1_below_rest,
        p.dote(bj(1), a1) && p.lt(bj(1), a2) && a1_below_rest,
        p.lt(bj(r), a1) && p.lt(bj(r), a2) && next.is_some_and(|x| p.lt(x, a2)),
        p.dote(bj(r), a1) && p.lt(bj(r), a2) && next.is_some_and(|x| p.lt(x, a1)),
    ];
    Ok(conds.iter().position(|&c| c).map(|i| i + 1))
}

/// The tableau assigned to a member of the complemented set.
pub fn mult_map(p: &Poset, f: &FactorPair) -> Result<Tableau, Error> {
    if f.a.len() != 2 || f.b.len() < 3 || !is_powersum_word(p, &f.a) || !is_powersum_word(p, &f.b) {
        return Err(Error::Precondition("not a pair of powersum words of lengths 2 and k-2 > 2".into()));
    }
    if membership_case(p, f)?.is_none() {
        return Err(Error::Precondition(format!("({:?}, {:?}) lies in the factorization image", f.a, f.b)));
    }
    let (a, b) = (&f.a, &f.b);
    let (a1, a2, b1, b2) = (a[0], a[1], b[0], b[1]);
    let r = r_index(p, b)?;
    let rows = if b.iter().all(|&x| p.lt(a2, x)) && p.lt(a1, b1) {
        vec![a.clone(), b.clone()]
    } else if b.iter().all(|&x| p.lt(a2, x)) && p.dote(a1, b1) {
        vec![vec![a2, a1], b.clone()]
    } else if p.dote(a1, b1) && p.lt(b1, a2) && b[1..].iter().all(|&x| p.lt(a1, x)) {
        let mut second = vec![a2];
        second.extend_from_slice(&b[1..]);
        vec![vec![b1, a1], second]
    } else if p.lt(b1, a2) && (r > 1 || p.lt(b1, a1)) {
        vec![b.clone(), a.clone()]
    } else if p.lt(b1, a2) && p.dote(a1, b1) && p.lt(b2, a1) {
        vec![b.clone(), vec![a2, a1]]
    } else {
        return Err(Error::Inconsistent(format!("no multiplication case applies to ({a:?}, {b:?})")));
    };
    tab(p, &PowerfulArray::new(rows))
}

/// Images of the complemented set under [`mult_map`], sorted by column word.
pub fn k_set(p: &Poset) -> Result<Vec<Tableau>, Error> {
    let mut out = complemented_set(p)?.iter().map(|f| mult_map(p, f)).collect::<Result<Vec<_>, _>>()?;
    out.sort_by_cached_key(|t| t.colword());
    let before = out.len();
    out.dedup();
    if out.len() != before {
        return Err(Error::Inconsistent("the multiplication map is not injective".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csf::e_coeff;
    use crate::poset::{enumerate_hessenberg, poset_from_hessenberg};
    use crate::qcore::{Composition, Partition};
    use crate::tableaux::enumerate_powerful_arrays;
    use crate::tableaux::tests::{pm, tb};
    use crate::tableaux::{enumerate_class, inv_generating_function, TableauClass};
    use crate::QPoly;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn two_row(n: usize) -> Partition {
        Partition::new(vec![n - 2, 2]).unwrap()
    }

    #[test]
    fn r_index_examples() {
        let p = pm("0,0,1,2");
        assert_eq!(r_index(&p, &[1, 2]).unwrap(), 1);
        assert_eq!(r_index(&p, &[1, 3, 4]).unwrap(), 2);
        assert!(r_index(&p, &[1, 3]).is_err());
        assert!(r_index(&p, &[1]).is_err());
    }

    #[test]
    fn factorization_is_injective() {
        for n in 3..=7 {
            for m in enumerate_hessenberg(n) {
                let p = poset_from_hessenberg(&m);
                let words = powersum_permutations(&p, p.full_mask());
                let mut pairs: Vec<FactorPair> = words.iter().map(|w| factorize(&p, w).unwrap()).collect();
                pairs.sort();
                pairs.dedup();
                assert_eq!(pairs.len(), words.len(), "{m}");
            }
        }
    }

    #[test]
    fn figure_poset() {
        let p = pm("0,0,1,1,2,4");
        let lambda = two_row(6);
        let strong = enumerate_class(&p, &lambda, TableauClass::Strong);
        let powerful = enumerate_class(&p, &lambda, TableauClass::Powerful);
        let k = k_set(&p).unwrap();
        assert_eq!((strong.len(), k.len(), powerful.len()), (6, 8, 10));
        for t in &strong {
            assert!(k.contains(t));
        }
        for t in &k {
            assert!(powerful.contains(t));
        }
        for key in ["1,3,2,4/5,6", "1,4,2,3/5,6"] {
            let t = tb(key);
            assert!(k.contains(&t) && !strong.contains(&t));
        }
        for outside in ["1,3,4,2/5,6", "1,4,3,2/5,6"] {
            let t = tb(outside);
            assert!(powerful.contains(&t) && !k.contains(&t));
        }
        let expected = QPoly::from_ints(&[0, 0, 1, 3, 3, 1]);
        assert_eq!(inv_generating_function(&p, &k), expected);
        assert_eq!(e_coeff(&p, &lambda).unwrap(), expected);
    }

    #[test]
    fn chain_has_empty_complement() {
        let p = pm("0,1,2,3,4");
        assert!(standard_pairs(&p).is_empty());
        assert!(complemented_set(&p).unwrap().is_empty());
        assert!(k_set(&p).unwrap().is_empty());
    }

    #[test]
    fn small_posets_rejected() {
        let p = pm("0,0,0,0");
        assert!(complemented_set(&p).is_err());
    }

    #[test]
    fn mult_rejects_image_pairs() {
        let p = pm("0,0,1,1,2,4");
        let w = &powersum_permutations(&p, p.full_mask())[0];
        assert!(mult_map(&p, &factorize(&p, w).unwrap()).is_err());
    }

    fn lemma_membership(p: &Poset, v: &[usize], w: &[usize]) -> bool {
        let r = r_index(p, v).unwrap();
        if r == 1 {
            return true;
        }
        let (vr, vr1) = (v[r - 1], v[r]);
        (p.lt(vr, w[0]) && p.lt(vr, w[1]) && p.lt(vr1, w[1])) || (p.dote(vr, w[0]) && p.lt(vr, w[1]) && p.lt(vr1, w[0]))
    }

    #[test]
    fn two_row_coefficients() {
        for n in 5..=7 {
            let lambda = two_row(n);
            for m in enumerate_hessenberg(n) {
                let p = poset_from_hessenberg(&m);
                let f = complemented_set(&p).unwrap();
                let k = k_set(&p).unwrap();
                assert_eq!(k.len(), f.len(), "{m}");
                let strong = enumerate_class(&p, &lambda, TableauClass::Strong);
                let powerful = enumerate_class(&p, &lambda, TableauClass::Powerful);
                assert!(strong.iter().all(|t| k.contains(t)), "{m}");
                assert!(k.iter().all(|t| powerful.contains(t)), "{m}");
                assert_eq!(inv_generating_function(&p, &k), e_coeff(&p, &lambda).unwrap(), "{m}");
                let mut by_lemma: Vec<Tableau> = enumerate_powerful_arrays(&p, &comp(&[2, n - 2]))
                    .iter()
                    .chain(
                        enumerate_powerful_arrays(&p, &comp(&[n - 2, 2]))
                            .iter()
                            .filter(|a| lemma_membership(&p, &a.rows[0], &a.rows[1])),
                    )
                    .map(|a| tab(&p, a).unwrap())
                    .collect();
                by_lemma.sort_by_cached_key(|t| t.colword());
                by_lemma.dedup();
                assert_eq!(by_lemma, k, "{m}");
            }
        }
    }
}
