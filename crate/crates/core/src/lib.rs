//! Chromatic quasisymmetric functions of natural unit interval orders,
//! P-tableau classes, and Hikita's tableau distribution, all in exact
//! arithmetic.

pub mod csf;
pub mod error;
pub mod hikita;
pub mod poset;
pub mod qcore;
pub mod structural;
pub mod tableaux;

pub use error::Error;

use num_rational::BigRational;

/// Polynomial in `q` with rational coefficients.
pub type QPoly = qcore::Poly<BigRational>;
/// Reduced rational function in `q` with rational coefficients.
pub type QRat = qcore::RatFunc<BigRational>;
/// Exact rational scalar.
pub type Rational = BigRational;

pub type Result<T> = std::result::Result<T, Error>;
