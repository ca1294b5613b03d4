//! Chromatic quasisymmetric functions: a proper-colouring oracle, the Schur
//! route through standard `P`-tableaux, exact conversion to the elementary
//! basis, and closed formulas for paths and chains of cliques.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::poset::Poset;
use crate::qcore::{compositions, partitions, q_factorial, q_int, Composition, Partition};
use crate::tableaux::{enumerate_standard, inv_generating_function};
use crate::{QPoly, Rational};

/// Largest poset the colouring oracle accepts unless told otherwise.
pub const DEFAULT_ORACLE_BOUND: usize = 9;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Basis {
    Monomial,
    Elementary,
    Schur,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Elementary => "e",
            Basis::Schur => "s",
        }
    }

    pub fn from_symbol(s: &str) -> Result<Basis, Error> {
        match s {
            "m" | "monomial" => Ok(Basis::Monomial),
            "e" | "elementary" => Ok(Basis::Elementary),
            "s" | "schur" => Ok(Basis::Schur),
            _ => Err(Error::Parse(format!("unknown basis {s:?}"))),
        }
    }
}

/// Homogeneous symmetric function of degree `n` in a named basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    basis: Basis,
    n: usize,
    coeffs: BTreeMap<Partition, QPoly>,
    /// False when the coefficients came from a poset whose colouring sum is
    /// not known to be symmetric in `x` for generic `q`.
    symmetric: bool,
}

impl SymFunc {
    pub fn zero(basis: Basis, n: usize) -> Self {
        SymFunc { basis, n, coeffs: BTreeMap::new(), symmetric: true }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn coeff(&self, lambda: &Partition) -> QPoly {
        self.coeffs.get(lambda).cloned().unwrap_or_else(QPoly::zero)
    }

    /// Adds `c` to the coefficient of `λ`.
    pub fn add_term(&mut self, lambda: Partition, c: &QPoly) {
        assert_eq!(lambda.size(), self.n, "term degree must match");
        let slot = self.coeffs.entry(lambda.clone()).or_insert_with(QPoly::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    /// Nonzero terms, largest partition first.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QPoly)> {
        self.coeffs.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Every coefficient evaluated at `q = x`.
    pub fn at_q(&self, x: &Rational) -> SymFunc {
        let mut out = SymFunc::zero(self.basis, self.n);
        out.symmetric = self.symmetric || x == &Rational::from_integer(1.into());
        for (l, c) in &self.coeffs {
            out.add_term(l.clone(), &QPoly::constant(c.eval(x)));
        }
        out
    }

    /// Every coefficient has nonnegative coefficients in `q`.
    pub fn is_positive(&self) -> bool {
        self.coeffs.values().all(|c| c.has_nonnegative_coeffs())
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<CoeffJson> = self
            .terms()
            .map(|(l, c)| CoeffJson {
                partition: l.parts().to_vec(),
                poly: c.coeffs().iter().map(rational_json).collect(),
            })
            .collect();
        let j = SymFuncJson {
            basis: self.basis.symbol().to_string(),
            n: self.n,
            coeffs,
            warning: (!self.symmetric).then(|| "not symmetric in general; use at q = 1".to_string()),
        };
        serde_json::to_value(j).expect("plain data serializes")
    }

    pub fn from_json(v: &Value) -> Result<SymFunc, Error> {
        let j: SymFuncJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = SymFunc::zero(Basis::from_symbol(&j.basis)?, j.n);
        out.symmetric = j.warning.is_none();
        for c in j.coeffs {
            let l = Partition::new(c.partition)?;
            if l.size() != j.n {
                return Err(Error::Parse(format!("partition {l} has the wrong size")));
            }
            let poly = c.poly.iter().map(parse_rational_json).collect::<Result<Vec<_>, _>>()?;
            out.add_term(l, &QPoly::from_coeffs(poly));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct SymFuncJson {
    basis: String,
    n: usize,
    coeffs: Vec<CoeffJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    partition: Vec<usize>,
    poly: Vec<Value>,
}

fn rational_json(c: &BigRational) -> Value {
    if c.is_integer() {
        if let Ok(i) = i64::try_from(c.to_integer()) {
            return Value::from(i);
        }
    }
    Value::from(c.to_string())
}

fn parse_rational_json(v: &Value) -> Result<BigRational, Error> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
        Value::String(s) => s.parse::<BigRational>().map_err(|_| Error::Parse(format!("bad rational {s:?}"))),
        _ => Err(Error::Parse(format!("bad coefficient {v}"))),
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .map(|(l, c)| {
                let idx = crate::qcore::partition_join(l.parts());
                format!("({}) {}_{{{}}}", c.pretty(), self.basis.symbol(), idx)
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `Σ q^{inv(κ)}` over proper colourings `κ` of the incomparability graph
/// using colour `i` exactly `sizes[i]` times; `inv` counts edges `i < j` with
/// `κ(i) > κ(j)`.
pub fn monomial_coefficient(p: &Poset, sizes: &[usize]) -> QPoly {
    let n = p.n();
    if sizes.iter().sum::<usize>() != n {
        return QPoly::zero();
    }
    let earlier: Vec<Vec<usize>> = (1..=n).map(|v| (1..v).filter(|&u| p.incomparable(u, v)).collect()).collect();
    let mut colour = vec![0usize; n + 1];
    let mut left = sizes.to_vec();
    let mut counts = vec![0u64; n * n / 2 + 1];
    colour_rec(1, n, &earlier, &mut colour, &mut left, 0, &mut counts);
    QPoly::from_counts(&counts)
}

fn colour_rec(
    v: usize,
    n: usize,
    earlier: &[Vec<usize>],
    colour: &mut [usize],
    left: &mut [usize],
    inv: usize,
    counts: &mut [u64],
) {
    if v > n {
        counts[inv] += 1;
        return;
    }
    for c in 1..=left.len() {
        if left[c - 1] == 0 {
            continue;
        }
        let mut extra = 0;
        let mut proper = true;
        for &u in &earlier[v - 1] {
            if colour[u] == c {
                proper = false;
                break;
            }
            if colour[u] > c {
                extra += 1;
            }
        }
        if !proper {
            continue;
        }
        colour[v] = c;
        left[c - 1] -= 1;
        colour_rec(v + 1, n, earlier, colour, left, inv + extra, counts);
        left[c - 1] += 1;
        colour[v] = 0;
    }
}

/// Monomial expansion from proper colourings, for posets up to the default bound.
pub fn csf_coloring_oracle(p: &Poset) -> Result<SymFunc, Error> {
    csf_coloring_oracle_bounded(p, DEFAULT_ORACLE_BOUND)
}

pub fn csf_coloring_oracle_bounded(p: &Poset, bound: usize) -> Result<SymFunc, Error> {
    if p.n() > bound {
        return Err(Error::BoundExceeded { n: p.n(), bound });
    }
    let mut out = SymFunc::zero(Basis::Monomial, p.n());
    out.symmetric = p.hessenberg().is_some();
    for lambda in partitions(p.n()) {
        let c = monomial_coefficient(p, lambda.parts());
        out.add_term(lambda, &c);
    }
    Ok(out)
}

/// Schur expansion: the coefficient of `s_λ` sums `q^{inv}` over standard
/// `P`-tableaux of shape `λ'`.
pub fn csf_schur(p: &Poset) -> SymFunc {
    let mut out = SymFunc::zero(Basis::Schur, p.n());
    for lambda in partitions(p.n()) {
        let c = inv_generating_function(p, &enumerate_standard(p, &lambda.conjugate()));
        out.add_term(lambda, &c);
    }
    out
}

/// Elementary expansion of `X_{inc(P)}`; refuses posets whose colouring sum
/// is not known to be symmetric.
pub fn e_expansion(p: &Poset) -> Result<SymFunc, Error> {
    to_elementary(&csf_coloring_oracle(p)?)
}

/// The coefficient `c_λ(q)` of `e_λ`.
pub fn e_coeff(p: &Poset, lambda: &Partition) -> Result<QPoly, Error> {
    if lambda.size() != p.n() {
        return Err(Error::Precondition(format!("{lambda} is not a partition of {}", p.n())));
    }
    Ok(e_expansion(p)?.coeff(lambda))
}

/// Product of two monomial symmetric functions: `η ↦ g^η_{μν}`.
pub fn monomial_product(mu: &Partition, nu: &Partition) -> BTreeMap<Partition, u64> {
    let total = mu.size() + nu.size();
    let mut out = BTreeMap::new();
    for eta in partitions(total) {
        if eta.len() > mu.len() + nu.len() || eta.len() < mu.len().max(nu.len()) {
            continue;
        }
        let mut padded = mu.parts().to_vec();
        padded.resize(eta.len(), 0);
        let g = arrangements_fitting(&padded, eta.parts())
            .into_iter()
            .filter(|a| Partition::from_unsorted(eta.parts().iter().zip(a).map(|(e, x)| e - x).collect()) == *nu)
            .count() as u64;
        if g > 0 {
            out.insert(eta, g);
        }
    }
    out
}

/// Distinct rearrangements `a` of `parts` with `a_i ≤ bound_i`.
fn arrangements_fitting(parts: &[usize], bound: &[usize]) -> Vec<Vec<usize>> {
    let mut vals: Vec<usize> = parts.to_vec();
    vals.sort_unstable();
    vals.dedup();
    let mut count: Vec<usize> = vals.iter().map(|v| parts.iter().filter(|p| *p == v).count()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts.len());
    fn rec(vals: &[usize], count: &mut [usize], bound: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == bound.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..vals.len() {
            if count[k] == 0 || vals[k] > bound[cur.len()] {
                continue;
            }
            count[k] -= 1;
            cur.push(vals[k]);
            rec(vals, count, bound, cur, out);
            cur.pop();
            count[k] += 1;
        }
    }
    rec(&vals, &mut count, bound, &mut cur, &mut out);
    out
}

/// Monomial expansion of `e_λ`, by multiplying out `e_{λ_1} e_{λ_2} ...`.
pub fn elementary_in_monomials(lambda: &Partition) -> BTreeMap<Partition, u64> {
    let mut acc: BTreeMap<Partition, u64> = BTreeMap::from([(Partition::empty(), 1)]);
    for &k in lambda.parts() {
        let ek = Partition::new(vec![1; k]).expect("column shape");
        let mut next = BTreeMap::new();
        for (mu, c) in &acc {
            for (eta, g) in monomial_product(mu, &ek) {
                *next.entry(eta).or_insert(0) += c * g;
            }
        }
        acc = next;
    }
    acc
}

/// Number of semistandard tableaux of shape `λ` and content `μ`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    fn rec(shape: Vec<usize>, content: &[usize], memo: &mut HashMap<(Vec<usize>, usize), u64>) -> u64 {
        let Some((&last, rest)) = content.split_last() else {
            return u64::from(shape.is_empty());
        };
        let key = (shape.clone(), content.len());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        // remove a horizontal strip of size `last`
        let mut total = 0;
        let mut inner = shape.clone();
        strip(&shape, 0, last, &mut inner, rest, memo, &mut total);
        memo.insert(key, total);
        total
    }
    fn strip(
        shape: &[usize],
        row: usize,
        left: usize,
        inner: &mut Vec<usize>,
        rest: &[usize],
        memo: &mut HashMap<(Vec<usize>, usize), u64>,
        total: &mut u64,
    ) {
        if row == shape.len() {
            if left == 0 {
                let trimmed: Vec<usize> = inner.iter().copied().filter(|&x| x > 0).collect();
                *total += rec(trimmed, rest, memo);
            }
            return;
        }
        let below = shape.get(row + 1).copied().unwrap_or(0);
        let max_take = (shape[row] - below).min(left);
        for take in 0..=max_take {
            inner[row] = shape[row] - take;
            strip(shape, row + 1, left - take, inner, rest, memo, total);
        }
        inner[row] = shape[row];
    }
    if lambda.size() != mu.size() {
        return 0;
    }
    rec(lambda.parts().to_vec(), mu.parts(), &mut HashMap::new())
}

/// Re-expresses `f` in the monomial basis.
pub fn to_monomial(f: &SymFunc) -> SymFunc {
    let mut out = SymFunc::zero(Basis::Monomial, f.n);
    out.symmetric = f.symmetric;
    match f.basis {
        Basis::Monomial => return f.clone(),
        Basis::Elementary => {
            for (lambda, c) in &f.coeffs {
                for (mu, k) in elementary_in_monomials(lambda) {
                    out.add_term(mu, &c.scale(&small(k)));
                }
            }
        }
        Basis::Schur => {
            let ps = partitions(f.n);
            for (lambda, c) in &f.coeffs {
                for mu in &ps {
                    let k = kostka(lambda, mu);
                    if k > 0 {
                        out.add_term(mu.clone(), &c.scale(&small(k)));
                    }
                }
            }
        }
    }
    out
}

fn small(k: u64) -> Rational {
    BigRational::from_integer(BigInt::from(k))
}

/// Exact conversion to the elementary basis by a unitriangular solve.
pub fn to_elementary(f: &SymFunc) -> Result<SymFunc, Error> {
    if !f.symmetric {
        return Err(Error::NotSymmetric);
    }
    if f.basis == Basis::Elementary {
        return Ok(f.clone());
    }
    let target = to_monomial(f);
    let mut out = SymFunc::zero(Basis::Elementary, f.n);
    let mut residual = target.clone();
    // Largest partitions first: e_{μ'} contributes m_μ with coefficient 1 and
    // otherwise only monomials dominated by μ.
    for mu in partitions(f.n) {
        let c = residual.coeff(&mu);
        if c.is_zero() {
            continue;
        }
        let lambda = mu.conjugate();
        for (eta, k) in elementary_in_monomials(&lambda) {
            residual.add_term(eta, &-c.scale(&small(k)));
        }
        out.add_term(lambda, &c);
    }
    if residual.num_terms() != 0 {
        return Err(Error::Inconsistent("elementary solve left a nonzero residual".into()));
    }
    Ok(out)
}

/// Exact conversion to the Schur basis.
pub fn to_schur(f: &SymFunc) -> Result<SymFunc, Error> {
    if !f.symmetric {
        return Err(Error::NotSymmetric);
    }
    if f.basis == Basis::Schur {
        return Ok(f.clone());
    }
    let mut residual = to_monomial(f);
    let mut out = SymFunc::zero(Basis::Schur, f.n);
    let ps = partitions(f.n);
    for lambda in &ps {
        let c = residual.coeff(lambda);
        if c.is_zero() {
            continue;
        }
        for mu in &ps {
            let k = kostka(lambda, mu);
            if k > 0 {
                residual.add_term(mu.clone(), &-c.scale(&small(k)));
            }
        }
        out.add_term(lambda.clone(), &c);
    }
    if residual.num_terms() != 0 {
        return Err(Error::Inconsistent("Schur solve left a nonzero residual".into()));
    }
    Ok(out)
}

/// Closed elementary expansion for the path on `n` vertices.
pub fn path_formula(n: usize) -> Result<SymFunc, Error> {
    if n == 0 {
        return Err(Error::Precondition("the path formula needs n ≥ 1".into()));
    }
    let mut out = SymFunc::zero(Basis::Elementary, n);
    for alpha in compositions(n) {
        let a = alpha.parts();
        let l = a.len();
        let mut c = q_int::<Rational>(a[l - 1]).shift(l - 1);
        for &ai in &a[..l - 1] {
            c = &c * &q_int(ai - 1);
        }
        out.add_term(alpha.sort(), &c);
    }
    Ok(out)
}

/// Closed elementary expansion for the chain of cliques `K_γ`.
pub fn kchain_formula(gamma: &Composition) -> Result<SymFunc, Error> {
    let g = gamma.parts();
    if g.is_empty() || g.iter().any(|&x| x < 2) {
        return Err(Error::Precondition(format!("clique sizes in {gamma} must be at least 2")));
    }
    let l = g.len();
    let n = g.iter().sum::<usize>() - (l - 1);
    let mut prefactor = q_factorial::<Rational>(g[l - 1] - 1);
    for &gi in &g[..l - 1] {
        prefactor = &prefactor * &q_factorial(gi - 2);
    }
    // suffix thresholds Σ_{j≥i} γ_j − (l − i), 1-based i
    let thresh: Vec<usize> = (1..=l).map(|i| g[i - 1..].iter().sum::<usize>() - (l - i)).collect();
    let mut out = SymFunc::zero(Basis::Elementary, n);
    let mut alpha = vec![0usize; l];
    for a1 in 1..=n {
        alpha[0] = a1;
        kchain_rest(g, &thresh, 1, n - a1, &mut alpha, &prefactor, &mut out);
    }
    Ok(out)
}

fn kchain_rest(
    g: &[usize],
    thresh: &[usize],
    i: usize,
    left: usize,
    alpha: &mut Vec<usize>,
    prefactor: &QPoly,
    out: &mut SymFunc,
) {
    let l = g.len();
    if i == l {
        if left != 0 {
            return;
        }
        let mut c = prefactor * &q_int(alpha[0]);
        for k in 1..l {
            let bound = g[k - 1] - 1;
            let m = alpha[k].min(bound);
            c = &c * &q_int::<Rational>(alpha[k].abs_diff(bound)).shift(m);
        }
        out.add_term(Partition::from_unsorted(alpha.clone()), &c);
        return;
    }
    for ai in 0..=left {
        // suffix sum from position i (0-based) is ai plus what remains after it
        let suffix = left;
        let ok = (ai + 1 < g[i - 1] && suffix < thresh[i]) || (ai >= g[i - 1] && suffix >= thresh[i]);
        if ok {
            alpha[i] = ai;
            kchain_rest(g, thresh, i + 1, left - ai, alpha, prefactor, out);
        }
    }
}
