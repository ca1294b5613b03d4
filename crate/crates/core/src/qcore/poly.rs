use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, Zero};

use crate::error::Error;

/// Coefficient ring of a polynomial.
pub trait Scalar: Num + Clone + fmt::Debug {}

impl<T: Num + Clone + fmt::Debug> Scalar for T {}

/// Coefficient rings in which every nonzero element is invertible.
pub trait FieldScalar: Scalar + Neg<Output = Self> {}

impl<T> FieldScalar for Ratio<T> where Ratio<T>: Scalar + Neg<Output = Ratio<T>> {}

/// Dense univariate polynomial in `q`; `coeffs[i]` multiplies `q^i`.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^d`.
    pub fn monomial(c: C, d: usize) -> Self {
        let mut coeffs = vec![C::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    /// `q^d`.
    pub fn q_pow(d: usize) -> Self {
        Self::monomial(C::one(), d)
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Polynomial whose coefficient of `q^d` is the number of occurrences of `d`.
    pub fn from_counts(counts: &[u64]) -> Self {
        let coeffs = counts.iter().map(|&c| small::<C>(c)).collect();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Lowest power of `q` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiply by `q^d`.
    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![C::zero(); d];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<C: Scalar + PartialOrd> Poly<C> {
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| *c >= C::zero())
    }
}

impl<C: FieldScalar> Poly<C> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dl = d.leading().expect("polynomial division by zero").clone();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![C::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone() / dl.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = C::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }
}

pub(crate) fn small<C: Scalar>(v: u64) -> C {
    // Binary expansion keeps this generic over any ring with 0 and 1.
    let mut out = C::zero();
    let mut bit = C::one();
    let mut v = v;
    while v > 0 {
        if v & 1 == 1 {
            out = out + bit.clone();
        }
        bit = bit.clone() + bit;
        v >>= 1;
    }
    out
}

impl<C: Scalar> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Scalar> One for Poly<C> {
    fn one() -> Self {
        Poly::one()
    }
}

impl<'a, C: Scalar> Add<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(short.coeffs.iter()) {
            *c = c.clone() + s.clone();
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<'a, C: Scalar> Sub<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl<'a, C: Scalar> Mul<&'a Poly<C>> for &'a Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Scalar> $tr<Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, C: Scalar> $tr<&'a Poly<C>> for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: &Poly<C>) -> Poly<C> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Scalar> AddAssign<&Poly<C>> for Poly<C> {
    fn add_assign(&mut self, rhs: &Poly<C>) {
        *self = &*self + rhs;
    }
}

impl<C: Scalar> AddAssign<Poly<C>> for Poly<C> {
    fn add_assign(&mut self, rhs: Poly<C>) {
        *self = &*self + &rhs;
    }
}

impl<C: Scalar> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly::from_coeffs(self.coeffs.into_iter().map(|c| C::zero() - c).collect())
    }
}

impl<C: Scalar> std::iter::Sum for Poly<C> {
    fn sum<I: Iterator<Item = Poly<C>>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |a, b| a + b)
    }
}

/// Canonical form: ascending coefficient list, e.g. `[1,2,2,1]`.
impl<C: Scalar + fmt::Display> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<C: Scalar + FromStr> FromStr for Poly<C> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("polynomial must be bracketed: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Poly::zero());
        }
        let coeffs = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<C>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl Poly<BigRational> {
    pub fn from_ints(v: &[i64]) -> Self {
        Poly::from_coeffs(v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// Coefficients as machine integers, if every coefficient is an integer that fits.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    /// Human readable form in decreasing degree, e.g. `q^3 + 2q + 1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = a.is_one();
            match d {
                0 => out.push_str(&a.to_string()),
                _ => {
                    if !unit {
                        out.push_str(&a.to_string());
                    }
                    out.push('q');
                    if d > 1 {
                        out.push('^');
                        out.push_str(&d.to_string());
                    }
                }
            }
        }
        out
    }
}

/// `[n]_q = 1 + q + ... + q^{n-1}`, with `[0]_q = 0`.
pub fn q_int<C: Scalar>(n: usize) -> Poly<C> {
    Poly::from_coeffs(vec![C::one(); n])
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial<C: Scalar>(n: usize) -> Poly<C> {
    (1..=n).fold(Poly::one(), |acc, k| &acc * &q_int(k))
}
