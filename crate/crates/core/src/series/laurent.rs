use std::fmt;

use super::Series;
use crate::error::{Error, Result};
use crate::ring::{int, Rational, Ring};

/// Laurent series `Σ_{k=val}^{order} c_k t^k + O(t^{order+1})`, or an exact
/// Laurent polynomial when `order` is `None`.
///
/// Stored coefficients start at the true valuation: known leading zeros are
/// stripped, and a zero known only to precision `N` has `val = N + 1`. Because
/// the valuation is exact, products and inverses can propagate precision
/// without guessing.
#[derive(Clone)]
pub struct LaurentSeries<R: Ring> {
    val: i64,
    coeffs: Vec<R>,
    order: Option<i64>,
}

fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<R: Ring> LaurentSeries<R> {
    fn canonical(mut val: i64, mut coeffs: Vec<R>, order: Option<i64>) -> Self {
        if let Some(n) = order {
            let keep = (n - val + 1).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries {
                val: order.map_or(0, |n| n + 1),
                coeffs: Vec::new(),
                order,
            },
            Some(p) => {
                coeffs.drain(..p);
                val += p as i64;
                while coeffs.last().is_some_and(|c| c.is_zero()) {
                    coeffs.pop();
                }
                LaurentSeries { val, coeffs, order }
            }
        }
    }

    /// Exact Laurent polynomial `Σ coeffs[i] t^{val+i}`.
    pub fn exact(val: i64, coeffs: Vec<R>) -> Self {
        Self::canonical(val, coeffs, None)
    }

    /// `Σ coeffs[i] t^{val+i} + O(t^{order+1})`.
    pub fn truncated(val: i64, coeffs: Vec<R>, order: i64) -> Self {
        Self::canonical(val, coeffs, Some(order))
    }

    /// `t^shift · s`.
    pub fn from_series(s: &Series<R>, shift: i64) -> Self {
        Self::truncated(shift, s.coeffs().to_vec(), shift + s.order() as i64)
    }

    pub fn monomial(c: R, k: i64) -> Self {
        Self::exact(k, vec![c])
    }

    pub fn t_pow(k: i64) -> Self {
        Self::monomial(R::one(), k)
    }

    pub fn zero_to(order: i64) -> Self {
        Self::truncated(0, Vec::new(), order)
    }

    /// `None` for zero (exact or to the known precision).
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Highest exponent whose coefficient is known; `None` when exact.
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    pub fn knows(&self, k: i64) -> bool {
        self.order.is_none_or(|n| k <= n)
    }

    /// Coefficient of `t^k`. Exponents past the known order read as zero, so
    /// callers check [`Self::knows`] where that matters.
    pub fn coeff(&self, k: i64) -> R {
        if k < self.val {
            return R::zero();
        }
        self.coeffs
            .get((k - self.val) as usize)
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn get(&self, k: i64) -> Option<R> {
        self.knows(k).then(|| self.coeff(k))
    }

    /// Stored `(exponent, coefficient)` pairs, zeros included between the ends.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.first()
    }

    /// Coefficient of `t^{-1}`.
    pub fn residue(&self) -> Result<R> {
        if !self.knows(-1) {
            return Err(Error::InsufficientValuation {
                exponent: -1,
                low: self.val,
                high: self.order.unwrap_or(i64::MAX),
            });
        }
        Ok(self.coeff(-1))
    }

    pub fn truncate(&self, order: i64) -> Self {
        Self::canonical(self.val, self.coeffs.clone(), min_order(self.order, Some(order)))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> LaurentSeries<S> {
        LaurentSeries::canonical(self.val, self.coeffs.iter().map(f).collect(), self.order)
    }

    /// `t^k · self`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            order: self.order.map(|n| n + k),
        }
    }

    /// Power series part, valid when the valuation is non-negative.
    pub fn to_series(&self, order: usize) -> Result<Series<R>> {
        if let Some(v) = self.valuation() {
            if v < 0 {
                return Err(Error::Precondition(format!(
                    "series has a pole of order {}",
                    -v
                )));
            }
        }
        if !self.knows(order as i64) {
            return Err(Error::Precondition(format!(
                "coefficient of t^{order} is not known"
            )));
        }
        Ok(Series::from_fn(order, |i| self.coeff(i as i64)))
    }

    fn combine(&self, rhs: &Self, op: impl Fn(&R, &R) -> R) -> Self {
        let order = min_order(self.order, rhs.order);
        let ends = |s: &Self| (s.val, s.val + s.coeffs.len() as i64 - 1);
        let (la, ha) = ends(self);
        let (lb, hb) = ends(rhs);
        let lo = match (self.coeffs.is_empty(), rhs.coeffs.is_empty()) {
            (true, true) => return Self::canonical(0, Vec::new(), order),
            (true, false) => lb,
            (false, true) => la,
            (false, false) => la.min(lb),
        };
        let mut hi = ha.max(hb);
        if let Some(n) = order {
            hi = hi.min(n);
        }
        let coeffs = (lo..=hi)
            .map(|k| op(&self.coeff(k), &rhs.coeff(k)))
            .collect();
        Self::canonical(lo, coeffs, order)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, R::add)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, R::sub)
    }

    pub fn neg(&self) -> Self {
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(R::neg).collect(),
            order: self.order,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let exact_zero = |s: &Self| s.coeffs.is_empty() && s.order.is_none();
        if exact_zero(self) || exact_zero(rhs) {
            return Self::exact(0, Vec::new());
        }
        let val = self.val + rhs.val;
        let order = min_order(
            self.order.map(|n| n + rhs.val),
            rhs.order.map(|n| n + self.val),
        );
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::canonical(val, Vec::new(), order);
        }
        let full = self.coeffs.len() + rhs.coeffs.len() - 1;
        let len = match order {
            Some(n) => ((n - val + 1).max(0) as usize).min(full),
            None => full,
        };
        let mut out = vec![R::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                out[i + j].add_mul(a, b);
            }
        }
        Self::canonical(val, out, order)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::t_pow(0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse with the relative precision of `self`; the leading coefficient
    /// must be a unit. An exact polynomial with more than one term has no
    /// finite inverse, so truncate it first.
    pub fn try_inverse(&self) -> Result<Self> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::NotInvertible("zero Laurent series".into()))?;
        let inv0 = lead
            .inverse()
            .ok_or_else(|| Error::NotInvertible(format!("leading coefficient {lead}")))?;
        let rel = match self.order {
            Some(n) => (n - self.val) as usize,
            None if self.coeffs.len() == 1 => return Ok(Self::monomial(inv0, -self.val)),
            None => {
                return Err(Error::NotInvertible(
                    "exact Laurent polynomial with several terms".into(),
                ))
            }
        };
        let unit = Series::new(self.coeffs.clone(), rel);
        let inv = unit.invert_unit()?;
        Ok(Self::from_series(&inv, -self.val))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .terms()
            .map(|(k, c)| c.scale(&int(k)))
            .collect();
        Self::canonical(self.val - 1, coeffs, self.order.map(|n| n - 1))
    }

    /// `t ↦ -t`.
    pub fn neg_arg(&self) -> Self {
        let coeffs = self
            .terms()
            .map(|(k, c)| if k.rem_euclid(2) == 1 { c.neg() } else { c.clone() })
            .collect();
        Self::canonical(self.val, coeffs, self.order)
    }

    /// `t ↦ q t` for a nonzero rational `q`.
    pub fn scale_arg(&self, q: &Rational) -> Self {
        assert!(!Ring::is_zero(q), "scaling the variable by zero");
        let coeffs = self
            .terms()
            .map(|(k, c)| {
                let p = if k >= 0 {
                    Ring::pow(q, k as u32)
                } else {
                    Ring::pow(&q.recip(), (-k) as u32)
                };
                c.scale(&p)
            })
            .collect();
        Self::canonical(self.val, coeffs, self.order)
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = c.to_string();
            let body = if body.contains(' ') { format!("({body})") } else { body };
            match k {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*t")?,
                _ => write!(f, "{body}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(n) = self.order {
            write!(f, " + O(t^{})", n + 1)?;
        }
        Ok(())
    }
}

impl<R: Ring> PartialEq for LaurentSeries<R> {
    /// Equality up to the precision both sides know.
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).coeffs.is_empty()
    }
}

impl<R: Ring> fmt::Display for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl<R: Ring> fmt::Debug for LaurentSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl<R: Ring> Ring for LaurentSeries<R> {
    fn zero() -> Self {
        Self::exact(0, Vec::new())
    }
    fn one() -> Self {
        Self::t_pow(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        LaurentSeries::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        LaurentSeries::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        LaurentSeries::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        LaurentSeries::neg(self)
    }
    fn from_rational(q: &Rational) -> Self {
        Self::monomial(R::from_rational(q), 0)
    }
    fn inverse(&self) -> Option<Self> {
        self.try_inverse().ok()
    }
    fn scale(&self, q: &Rational) -> Self {
        LaurentSeries::scale(self, q)
    }
}
