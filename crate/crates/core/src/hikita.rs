//! Hikita's random insertion process on standard Young tableaux, the
//! resulting distribution `prob_m`, its monomial part `ζ_m`, and the ratio
//! `h_T = prob_m / ζ_m`.

use std::collections::HashMap;

use crate::error::Error;
use crate::poset::ReverseHessenberg;
use crate::qcore::{q_int, Partition};
use crate::tableaux::Tableau;
use crate::{QPoly, QRat, Rational};

/// Run-length form `(b_0, a_1, b_1, ..., b_ℓ, a_{ℓ+1})` of a 0/1 sequence
/// that starts with ones and ends with zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColorSequence {
    runs: Vec<usize>,
}

impl ColorSequence {
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut runs = vec![0];
        let mut cur = true;
        for &b in bits {
            if b != cur {
                runs.push(0);
                cur = b;
            }
            *runs.last_mut().unwrap() += 1;
        }
        if runs.len() % 2 == 1 {
            runs.push(0);
        }
        ColorSequence { runs }
    }

    pub fn bits(&self) -> Vec<bool> {
        self.runs.iter().enumerate().flat_map(|(i, &len)| std::iter::repeat_n(i % 2 == 0, len)).collect()
    }

    pub fn runs(&self) -> &[usize] {
        &self.runs
    }

    /// Number of interior runs of ones, `ℓ`.
    pub fn ell(&self) -> usize {
        self.runs.len() / 2 - 1
    }

    /// `a_i` for `1 ≤ i ≤ ℓ + 1`.
    pub fn a(&self, i: usize) -> usize {
        self.runs[2 * i - 1]
    }

    /// `b_i` for `0 ≤ i ≤ ℓ`.
    pub fn b(&self, i: usize) -> usize {
        self.runs[2 * i]
    }

    fn a_sum(&self, lo: usize, hi: usize) -> usize {
        (lo..=hi).map(|i| self.a(i)).sum()
    }

    fn b_sum(&self, lo: usize, hi: usize) -> usize {
        (lo..=hi).map(|i| self.b(i)).sum()
    }

    /// 1-based column receiving the new entry for choice `k`.
    pub fn insertion_column(&self, k: usize) -> usize {
        1 + self.a_sum(1, k) + self.b_sum(0, k)
    }
}

/// `δ_i = 1` iff column `i` has largest entry above `r`; length `n + 1`.
pub fn delta(t: &Tableau, r: usize) -> Result<ColorSequence, Error> {
    let n = t.size();
    if r > n {
        return Err(Error::Precondition(format!("r = {r} exceeds n = {n}")));
    }
    let bits: Vec<bool> = (0..=n).map(|j| t.column(j).last().is_some_and(|&x| x > r)).collect();
    Ok(ColorSequence::from_bits(&bits))
}

fn check_k(d: &ColorSequence, k: usize) -> Result<(), Error> {
    if k > d.ell() {
        return Err(Error::Precondition(format!("k = {k} exceeds ℓ = {}", d.ell())));
    }
    Ok(())
}

/// `f_k^{(r)}(T)`: places `n + 1` at the bottom of column `c_k`.
pub fn insert(t: &Tableau, r: usize, k: usize) -> Result<Tableau, Error> {
    let d = delta(t, r)?;
    check_k(&d, k)?;
    let c = d.insertion_column(k);
    t.add_to_column(c - 1, t.size() + 1)
        .ok_or_else(|| Error::Inconsistent(format!("column {c} of {t} does not accept a new cell")))
}

fn ratio(num: usize, den: usize) -> Result<QRat, Error> {
    if den == 0 {
        return Err(Error::Inconsistent("zero q-integer in a transition denominator".into()));
    }
    QRat::new(q_int(num), q_int(den))
}

/// Transition probability `φ_k^{(r)}(T; q)`.
pub fn phi(t: &Tableau, r: usize, k: usize) -> Result<QRat, Error> {
    let d = delta(t, r)?;
    check_k(&d, k)?;
    let mut out = QRat::from_poly(QPoly::q_pow(d.a_sum(1, k)));
    for i in 1..=k {
        let f = ratio(d.a_sum(i + 1, k) + d.b_sum(i, k), d.a_sum(i, k) + d.b_sum(i, k))?;
        out = &out * &f;
    }
    for i in k + 1..=d.ell() {
        let f = ratio(d.a_sum(k + 1, i) + d.b_sum(k + 1, i - 1), d.a_sum(k + 1, i) + d.b_sum(k + 1, i))?;
        out = &out * &f;
    }
    Ok(out)
}

/// Modified transition probability `q^{a_1 + ... + a_k}`.
pub fn phi_tilde(t: &Tableau, r: usize, k: usize) -> Result<QPoly, Error> {
    let d = delta(t, r)?;
    check_k(&d, k)?;
    Ok(QPoly::q_pow(d.a_sum(1, k)))
}

#[derive(Clone, Debug)]
struct Weights {
    prob: QRat,
    zeta: QPoly,
}

/// Memoized evaluation of `prob`, `ζ` and `h` for one reverse Hessenberg function.
pub struct Hikita<'a> {
    m: &'a ReverseHessenberg,
    memo: HashMap<Tableau, Option<Weights>>,
}

impl<'a> Hikita<'a> {
    pub fn new(m: &'a ReverseHessenberg) -> Self {
        Hikita { m, memo: HashMap::new() }
    }

    /// `None` when `T` is not a Hikita tableau for the prefix of `m` of its size.
    fn weights(&mut self, t: &Tableau) -> Option<Weights> {
        if let Some(w) = self.memo.get(t) {
            return w.clone();
        }
        let n = t.size();
        let w = if n == 0 {
            Some(Weights { prob: QRat::one(), zeta: QPoly::one() })
        } else {
            self.step(t, n)
        };
        self.memo.insert(t.clone(), w.clone());
        w
    }

    fn step(&mut self, t: &Tableau, n: usize) -> Option<Weights> {
        let s = t.remove_corner(n)?;
        let r = self.m.at(n);
        let d = delta(&s, r).expect("r ≤ n − 1 for a reverse Hessenberg function");
        let col = t.position(n)?.1 + 1;
        let k = (0..=d.ell()).find(|&k| d.insertion_column(k) == col)?;
        let prev = self.weights(&s)?;
        let p = phi(&s, r, k).expect("k in range");
        let z = phi_tilde(&s, r, k).expect("k in range");
        Some(Weights { prob: &prev.prob * &p, zeta: &prev.zeta * &z })
    }

    /// `prob_m(T; q)`; zero off the Hikita tableaux.
    pub fn prob(&mut self, t: &Tableau) -> Result<QRat, Error> {
        self.check_full(t)?;
        Ok(self.weights(t).map_or_else(QRat::zero, |w| w.prob))
    }

    pub fn zeta(&mut self, t: &Tableau) -> Result<QPoly, Error> {
        self.full(t).map(|w| w.zeta)
    }

    /// `prob / ζ`; defined only on Hikita tableaux.
    pub fn h(&mut self, t: &Tableau) -> Result<QRat, Error> {
        let w = self.full(t)?;
        w.prob.checked_div(&QRat::from_poly(w.zeta))
    }

    pub fn is_hikita(&mut self, t: &Tableau) -> Result<bool, Error> {
        self.check_full(t)?;
        Ok(self.weights(t).is_some())
    }

    fn check_full(&self, t: &Tableau) -> Result<(), Error> {
        if t.size() != self.m.n() || !t.is_standard() {
            return Err(Error::Precondition(format!("{t} is not a standard tableau with {} cells", self.m.n())));
        }
        Ok(())
    }

    fn full(&mut self, t: &Tableau) -> Result<Weights, Error> {
        self.check_full(t)?;
        self.weights(t).ok_or_else(|| Error::Precondition(format!("{t} is not an {}-Hikita tableau", self.m)))
    }
}

pub fn prob(m: &ReverseHessenberg, t: &Tableau) -> Result<QRat, Error> {
    Hikita::new(m).prob(t)
}

pub fn zeta(m: &ReverseHessenberg, t: &Tableau) -> Result<QPoly, Error> {
    Hikita::new(m).zeta(t)
}

pub fn h(m: &ReverseHessenberg, t: &Tableau) -> Result<QRat, Error> {
    Hikita::new(m).h(t)
}

/// `m`-Hikita tableaux of shape `λ`, grown one entry at a time under the
/// placement rules, sorted by column word.
pub fn enumerate_hikita(m: &ReverseHessenberg, lambda: &Partition) -> Vec<Tableau> {
    if lambda.size() != m.n() {
        return Vec::new();
    }
    let mut level = vec![Tableau::empty()];
    for j in 1..=m.n() {
        let r = m.at(j);
        let mut next = Vec::new();
        for t in &level {
            for c in 0..=t.num_columns() {
                let height = t.column(c).len();
                if lambda.conjugate().part(c) <= height {
                    continue;
                }
                if height > 0 && t.get(height - 1, c).unwrap() > r {
                    continue;
                }
                if c > 0 && *t.column(c - 1).last().unwrap() <= r {
                    continue;
                }
                if let Some(u) = t.add_to_column(c, j) {
                    next.push(u);
                }
            }
        }
        level = next;
    }
    level.sort_by_cached_key(|t| t.colword());
    level
}

/// `∏ [λ_i]_q!`.
pub fn shape_factorial(lambda: &Partition) -> QPoly {
    lambda.parts().iter().fold(QPoly::one(), |acc, &p| &acc * &crate::qcore::q_factorial::<Rational>(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csf::e_expansion;
    use crate::poset::{enumerate_hessenberg, poset_from_hessenberg};
    use crate::qcore::partitions;
    use crate::tableaux::{inv_p, standard_young_tableaux};

    fn tb(s: &str) -> Tableau {
        s.parse().unwrap()
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&Tableau::empty(), 0).unwrap().bits(), bits("0"));
        assert_eq!(delta(&tb("1,2,3"), 0).unwrap().bits(), bits("1110"));
        let col = delta(&tb("1/2/3"), 2).unwrap();
        assert_eq!(col.bits(), bits("1000"));
        assert_eq!((col.ell(), col.b(0), col.a(1)), (0, 1, 3));
        assert!(delta(&tb("1"), 2).is_err());
        let d = ColorSequence::from_bits(&bits("0110010"));
        assert_eq!(d.runs(), &[0, 1, 2, 2, 1, 1]);
        assert_eq!((d.ell(), d.insertion_column(0), d.insertion_column(1), d.insertion_column(2)), (2, 1, 4, 7));
        assert_eq!(d.bits(), bits("0110010"));
    }

    #[test]
    fn insert_examples() {
        assert_eq!(insert(&Tableau::empty(), 0, 0).unwrap(), tb("1"));
        assert_eq!(insert(&tb("1"), 0, 0).unwrap(), tb("1,2"));
        assert_eq!(insert(&tb("1"), 1, 0).unwrap(), tb("1/2"));
        // columns with maxima 1, 2 against r = 2: δ = 000, one slot
        assert_eq!(insert(&tb("1,2"), 2, 0).unwrap(), tb("1,2/3"));
        // r = 1: δ = 010, slots in columns 1 and 3
        assert_eq!(insert(&tb("1,2"), 1, 0).unwrap(), tb("1,2/3"));
        assert_eq!(insert(&tb("1,2"), 1, 1).unwrap(), tb("1,2,3"));
        assert!(insert(&tb("1,2"), 1, 2).is_err());
    }

    #[test]
    fn single_run_is_certain() {
        let t = tb("1,2/3");
        assert_eq!(phi(&t, 0, 0).unwrap(), QRat::one());
        assert_eq!(phi_tilde(&t, 0, 0).unwrap(), QPoly::one());
    }

    #[test]
    fn transition_probabilities_sum_to_one() {
        for n in 0..=5 {
            for lambda in partitions(n) {
                for t in standard_young_tableaux(&lambda) {
                    for r in 0..=n {
                        let l = delta(&t, r).unwrap().ell();
                        let total: QRat = (0..=l).map(|k| phi(&t, r, k).unwrap()).sum();
                        assert_eq!(total, QRat::one(), "{t} r={r}");
                        for k in 0..=l {
                            let at_one = phi_tilde(&t, r, k).unwrap().eval(&Rational::from_integer(1.into()));
                            assert_eq!(at_one, Rational::from_integer(1.into()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn empty_tableau() {
        let m = ReverseHessenberg::new(vec![]).unwrap();
        assert_eq!(prob(&m, &Tableau::empty()).unwrap(), QRat::one());
        assert_eq!(zeta(&m, &Tableau::empty()).unwrap(), QPoly::one());
        assert_eq!(h(&m, &Tableau::empty()).unwrap(), QRat::one());
        assert_eq!(enumerate_hikita(&m, &Partition::empty()), vec![Tableau::empty()]);
    }

    #[test]
    fn antichain_column() {
        for n in 1..=5 {
            let m = ReverseHessenberg::new(vec![0; n]).unwrap();
            let col = Partition::new(vec![1; n]).unwrap();
            let row = Partition::new(vec![n]).unwrap();
            assert_eq!(enumerate_hikita(&m, &col).is_empty(), n > 1);
            assert_eq!(enumerate_hikita(&m, &row).len(), 1);
            let chain = ReverseHessenberg::new((0..n).collect()).unwrap();
            assert_eq!(enumerate_hikita(&chain, &col).len(), 1);
        }
    }

    #[test]
    fn h_requires_hikita_tableau() {
        let m: ReverseHessenberg = "0,0".parse().unwrap();
        assert!(h(&m, &tb("1/2")).is_err());
        assert!(prob(&m, &tb("1/2")).unwrap().is_zero());
        assert!(prob(&m, &tb("1")).is_err());
    }

    #[test]
    fn identities_small() {
        let one = Rational::from_integer(1.into());
        for n in 0..=5 {
            for m in enumerate_hessenberg(n) {
                let p = poset_from_hessenberg(&m);
                let e = e_expansion(&p).unwrap();
                let mut hk = Hikita::new(&m);
                let mut total = QRat::zero();
                for lambda in partitions(n) {
                    let hik = enumerate_hikita(&m, &lambda);
                    let mut sum_prob = QRat::zero();
                    let mut sum_h = QRat::zero();
                    for t in standard_young_tableaux(&lambda) {
                        let pr = hk.prob(&t).unwrap();
                        assert_eq!(!pr.is_zero(), hik.contains(&t), "{m} {t}");
                        sum_prob = &sum_prob + &pr;
                        if pr.is_zero() {
                            continue;
                        }
                        let z = hk.zeta(&t).unwrap();
                        let lhs = QPoly::q_pow(inv_p(&p, &t) + m.weight());
                        assert_eq!(lhs, z.shift(lambda.star()), "{m} {t}");
                        let hv = hk.h(&t).unwrap();
                        sum_h = &sum_h + &(&QRat::from_poly(QPoly::q_pow(inv_p(&p, &t))) * &hv);
                        let at_one = hv.eval_at(&one).unwrap();
                        assert!(at_one > Rational::from_integer(0.into()) && at_one <= one);
                    }
                    total = &total + &sum_prob;
                    let fact = QRat::from_poly(shape_factorial(&lambda));
                    let c = QRat::from_poly(e.coeff(&lambda));
                    let lhs = &sum_prob * &QRat::from_poly(QPoly::q_pow(lambda.star()));
                    let rhs = (&c * &QRat::from_poly(QPoly::q_pow(m.weight()))).checked_div(&fact).unwrap();
                    assert_eq!(lhs, rhs, "{m} {lambda}");
                    assert_eq!(sum_h, c.checked_div(&fact).unwrap(), "{m} {lambda}");
                }
                assert_eq!(total, QRat::one(), "{m}");
            }
        }
    }

    #[test]
    fn h_lies_in_the_unit_interval() {
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        let points: Vec<Rational> =
            [(0, 1), (1, 3), (1, 2), (1, 1), (2, 1), (10, 1)].iter().map(|&(a, b)| Rational::new(a.into(), b.into())).collect();
        for n in 1..=6 {
            for m in enumerate_hessenberg(n) {
                let mut hk = Hikita::new(&m);
                for lambda in partitions(n) {
                    for t in enumerate_hikita(&m, &lambda) {
                        let hv = hk.h(&t).unwrap();
                        for a in &points {
                            let v = hv.eval_at(a).unwrap();
                            assert!(v > zero && v <= one, "{m} {t} at {a}: {v}");
                        }
                    }
                }
            }
        }
    }
}
