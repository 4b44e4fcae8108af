//! Exact coefficient rings.
//!
//! Every series, class and report in the crate is generic over [`Ring`]: a
//! commutative ring containing the rationals, with decidable equality and a
//! unit test. The concrete tower is
//! `Rational -> ParamPoly -> RatFunc`, with
//! [`LaurentSeries`](crate::series::LaurentSeries) over any of them usable as a
//! coefficient ring in turn.

mod param_poly;
mod ratfunc;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

pub use param_poly::{Monomial, ParamPoly, Var};
pub use ratfunc::{RatFunc, UniPoly};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Commutative ring over ℚ with exact arithmetic.
///
/// `is_zero` and `PartialEq` must agree: `a == b` iff `a.sub(b).is_zero()`.
/// For truncated elements (series used as coefficients) both are checked up to
/// the known precision.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// Multiplicative inverse when `self` is a unit.
    fn inverse(&self) -> Option<Self>;

    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&rat(n, 1))
    }

    fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = Ring::add(self, rhs);
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let p = Ring::mul(a, b);
        self.add_assign(&p);
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn inverse(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serializes a rational as `"p/q"` with `q > 0`, including `q == 1`.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Human-oriented rendering: integers without a denominator.
pub fn fmt_rational(q: &Rational) -> String {
    if *q.denom() == BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

/// `n!` as a rational.
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient `C(n, k)` with `C(n, k) = 0` outside `0..=n`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Rational::from_integer(acc)
}

/// `C(q, k)` for rational `q`, the coefficient of `x^k` in `(1+x)^q`.
pub fn binomial_rational(q: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (q - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}
