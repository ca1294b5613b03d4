use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::Error;

use super::poly::{FieldScalar, Poly};

/// Reduced quotient of two polynomials.
///
/// Numerator and denominator are coprime and the denominator is monic, so two
/// values are equal exactly when their fields are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<C> {
    num: Poly<C>,
    den: Poly<C>,
}

impl<C: FieldScalar> RatFunc<C> {
    pub fn new(num: Poly<C>, den: Poly<C>) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading().cloned().expect("nonzero denominator");
        let inv = C::one() / lead;
        Ok(RatFunc {
            num: n.scale(&inv),
            den: d.scale(&inv),
        })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly<C>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn numer(&self) -> &Poly<C> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this value equals, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly<C>> {
        (self.den == Poly::one()).then_some(&self.num)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, Error> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn eval_at(&self, x: &C) -> Result<C, Error> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(format!("{x:?}")));
        }
        Ok(self.num.eval(x) / d)
    }
}

impl<'a, C: FieldScalar> Add<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;
    fn add(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<'a, C: FieldScalar> Sub<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;
    fn sub(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<'a, C: FieldScalar> Mul<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;
    fn mul(self, rhs: &RatFunc<C>) -> RatFunc<C> {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl<C: FieldScalar> std::iter::Sum for RatFunc<C> {
    fn sum<I: Iterator<Item = RatFunc<C>>>(iter: I) -> Self {
        iter.fold(RatFunc::zero(), |a, b| &a + &b)
    }
}

/// `numerator-coeffs / denominator-coeffs`, e.g. `[1,1] / [1,1,1]`.
impl<C: FieldScalar + fmt::Display> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}
