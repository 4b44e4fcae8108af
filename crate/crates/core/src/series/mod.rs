//! Truncated formal power series, Laurent series and bivariate series.
//!
//! A [`Series`] of order `N` knows its coefficients of `x^0..=x^N`; binary
//! operations return the smaller order, so a result never claims more than its
//! inputs determine.

mod bivariate;
pub mod json;
mod laurent;
pub mod nilpotent;

pub use bivariate::BiSeries;
pub use laurent::LaurentSeries;

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{int, rat, Rational, Ring};

/// Power series `Σ_{i=0}^{order} c_i x^i + O(x^{order+1})`.
#[derive(Clone, PartialEq)]
pub struct Series<R: Ring> {
    coeffs: Vec<R>,
}

/// Selects the direction of [`Series::exp_log`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpLog {
    Exp,
    Log,
}

impl<R: Ring> Series<R> {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients
    /// are stored.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// `c x^k`, which is zero when `k > order`.
    pub fn monomial(c: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The variable `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(R::one(), 1, order)
    }

    pub fn from_rationals(qs: &[Rational], order: usize) -> Self {
        Self::new(qs.iter().map(R::from_rational).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero is returned only for `i <= order`.
    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn get(&self, i: usize) -> Option<&R> {
        self.coeffs.get(i)
    }

    pub fn set(&mut self, i: usize, c: R) {
        self.coeffs[i] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(R::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Series<S> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i| self.coeffs[i].add(&rhs.coeffs[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i| self.coeffs[i].sub(&rhs.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert_unit(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::NotInvertible(format!("constant term {}", self.coeffs[0])))?;
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = R::zero();
            for j in 1..=k {
                acc.add_mul(&self.coeffs[j], &out[k - j]);
            }
            out.push(acc.mul(&inv0).neg());
        }
        Ok(Series { coeffs: out })
    }

    /// `self(inner)`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0].add_assign(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(y)) = y`.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let inv1 = self.coeffs[1]
            .inverse()
            .ok_or_else(|| Error::NotInvertible(format!("linear coefficient {}", self.coeffs[1])))?;
        let mut g = Self::monomial(inv1.clone(), 1, n);
        // Fix one coefficient at a time: the x^k error of self(g) is linear in
        // g_k with slope f_1.
        for k in 2..=n {
            let err = self.compose(&g)?.coeffs[k].clone();
            g.coeffs[k] = err.mul(&inv1).neg();
        }
        Ok(g)
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self::from_fn(n - 1, |i| self.coeffs[i + 1].scale(&int(i as i64 + 1)))
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integral(&self) -> Self {
        let n = self.order();
        Self::from_fn(n + 1, |i| {
            if i == 0 {
                R::zero()
            } else {
                self.coeffs[i - 1].scale(&rat(1, i as i64))
            }
        })
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs a zero constant term".into()));
        }
        let n = self.order();
        let mut out = vec![R::one()];
        for m in 1..=n {
            // m e_m = Σ k s_k e_{m-k}
            let mut acc = R::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc.add_mul(&self.coeffs[k].scale(&int(k as i64)), &out[m - k]);
            }
            out.push(acc.scale(&rat(1, m as i64)));
        }
        Ok(Series { coeffs: out })
    }

    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition("log needs constant term 1".into()));
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let q = self.derivative().mul(&self.truncate(n - 1).invert_unit()?);
        Ok(q.integral())
    }

    pub fn exp_log(&self, mode: ExpLog) -> Result<Self> {
        match mode {
            ExpLog::Exp => self.exp(),
            ExpLog::Log => self.log(),
        }
    }

    /// `(self)^q` for a series with constant term 1.
    pub fn pow_rational(&self, q: &Rational) -> Result<Self> {
        self.log()?.scale(q).exp()
    }

    /// `x ↦ -x`.
    pub fn neg_arg(&self) -> Self {
        Self::from_fn(self.order(), |i| {
            if i % 2 == 1 {
                self.coeffs[i].neg()
            } else {
                self.coeffs[i].clone()
            }
        })
    }

    /// `x ↦ c x`.
    pub fn scale_arg(&self, c: &R) -> Self {
        let mut p = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(&p));
            p = p.mul(c);
        }
        Series { coeffs: out }
    }

    /// `self / x^k` when the first `k` coefficients vanish.
    pub fn div_x_pow(&self, k: usize) -> Result<Self> {
        if let Some(v) = self.valuation() {
            if v < k {
                return Err(Error::Precondition(format!(
                    "cannot divide a series of valuation {v} by x^{k}"
                )));
            }
        }
        if self.order() < k {
            return Err(Error::Precondition("not enough precision".into()));
        }
        Ok(Series {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `x^k · self`; the order grows by `k`.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// `x / self` for a series of valuation exactly one.
    pub fn x_over(&self) -> Result<Self> {
        self.div_x_pow(1)?.invert_unit()
    }

    /// First index where `self` and `other` differ, up to the common order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

impl<R: Ring> Series<R> {
    /// Leading-term-first listing, e.g. `x - 1/2*x^2 + O(x^4)`.
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = c.to_string();
            let body = if body.contains(' ') { format!("({body})") } else { body };
            match i {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*x")?,
                _ => write!(f, "{body}*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl<R: Ring> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl<R: Ring> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

/// `e^{c x}` to the given order.
pub fn exp_linear<R: Ring>(c: &R, order: usize) -> Series<R> {
    let mut out = Vec::with_capacity(order + 1);
    let mut term = R::one();
    for i in 0..=order {
        out.push(term.clone());
        term = term.mul(c).scale(&rat(1, i as i64 + 1));
    }
    Series::new(out, order)
}

/// `1 - e^{-x}`, the Todd characteristic function.
pub fn one_minus_exp_neg<R: Ring>(order: usize) -> Series<R> {
    let e = exp_linear(&R::from_int(-1), order);
    Series::one(order).sub(&e)
}
