use std::fmt;

use super::Series;
use crate::error::{Error, Result};
use crate::ring::{Rational, Ring};

/// Power series in `x, y` truncated at total degree `order`.
///
/// `rows[i][j]` is the coefficient of `x^i y^j`, with `i + j <= order`.
#[derive(Clone, PartialEq)]
pub struct BiSeries<R: Ring> {
    order: usize,
    rows: Vec<Vec<R>>,
}

impl<R: Ring> BiSeries<R> {
    pub fn zero(order: usize) -> Self {
        BiSeries {
            order,
            rows: (0..=order).map(|i| vec![R::zero(); order - i + 1]).collect(),
        }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.rows[0][0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    /// `c x^i y^j`, zero when `i + j > order`.
    pub fn monomial(c: R, i: usize, j: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if i + j <= order {
            s.rows[i][j] = c;
        }
        s
    }

    /// `s(x)`, truncated to the smaller order.
    pub fn from_x(s: &Series<R>) -> Self {
        Self::from_x_to(s, s.order())
    }

    pub fn from_x_to(s: &Series<R>, order: usize) -> Self {
        let order = order.min(s.order());
        let mut b = Self::zero(order);
        for i in 0..=order {
            b.rows[i][0] = s.coeff(i).clone();
        }
        b
    }

    /// `s(y)`.
    pub fn from_y(s: &Series<R>) -> Self {
        Self::from_x(s).swap()
    }

    pub fn from_y_to(s: &Series<R>, order: usize) -> Self {
        Self::from_x_to(s, order).swap()
    }

    /// `αx + βy`.
    pub fn linear(alpha: &Rational, beta: &Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.rows[1][0] = R::from_rational(alpha);
            s.rows[0][1] = R::from_rational(beta);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> &R {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: R) {
        self.rows[i][j] = c;
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        BiSeries {
            order,
            rows: (0..=order)
                .map(|i| self.rows[i][..=order - i].to_vec())
                .collect(),
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> BiSeries<S> {
        BiSeries {
            order: self.order,
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    fn zip(&self, rhs: &Self, op: impl Fn(&R, &R) -> R) -> Self {
        let order = self.order.min(rhs.order);
        BiSeries {
            order,
            rows: (0..=order)
                .map(|i| (0..=order - i).map(|j| op(&self.rows[i][j], &rhs.rows[i][j])).collect())
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, R::add)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, R::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order.min(rhs.order);
        let mut out = Self::zero(n);
        for i1 in 0..=n {
            for j1 in 0..=n - i1 {
                let a = &self.rows[i1][j1];
                if a.is_zero() {
                    continue;
                }
                let left = n - i1 - j1;
                for i2 in 0..=left {
                    for j2 in 0..=left - i2 {
                        let b = &rhs.rows[i2][j2];
                        if !b.is_zero() {
                            out.rows[i1 + i2][j1 + j2].add_mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    /// `outer(self)`; `self` must have zero constant term.
    pub fn compose_into(&self, outer: &Series<R>) -> Result<Self> {
        if !self.rows[0][0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order.min(outer.order());
        let inner = self.truncate(n);
        let mut acc = Self::constant(outer.coeff(n).clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.rows[0][0].add_assign(outer.coeff(k));
        }
        Ok(acc)
    }

    /// Exchanges `x` and `y`.
    pub fn swap(&self) -> Self {
        let n = self.order;
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                out.rows[j][i] = self.rows[i][j].clone();
            }
        }
        out
    }

    /// `s(x, y) ↦ s(ax + by, cx + dy)`.
    pub fn linear_substitute(&self, m: [[Rational; 2]; 2]) -> Self {
        let n = self.order;
        let u = Self::linear(&m[0][0], &m[0][1], n);
        let v = Self::linear(&m[1][0], &m[1][1], n);
        let powers = |b: &Self| {
            let mut ps = vec![Self::one(n)];
            for k in 1..=n {
                ps.push(ps[k - 1].mul(b));
            }
            ps
        };
        let (pu, pv) = (powers(&u), powers(&v));
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                let c = &self.rows[i][j];
                if c.is_zero() {
                    continue;
                }
                let term = pu[i].mul(&pv[j]);
                for (a, row) in term.rows.iter().enumerate() {
                    for (b, t) in row.iter().enumerate() {
                        if !t.is_zero() {
                            out.rows[a][b].add_mul(c, t);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(R::is_zero)
    }

    /// First nonzero coefficient by total degree, highest power of `x` first.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &R)> {
        (0..=self.order).find_map(|d| {
            (0..=d).rev().find_map(|i| {
                let c = &self.rows[i][d - i];
                (!c.is_zero()).then_some((i, d - i, c))
            })
        })
    }

    /// Coefficients of total degree `d` as `(power of x, coefficient)`.
    pub fn homogeneous(&self, d: usize) -> Vec<(usize, R)> {
        (0..=d.min(self.order))
            .map(|i| (i, self.rows[i][d - i].clone()))
            .collect()
    }
}

impl<R: Ring> fmt::Display for BiSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in 0..=self.order {
            for i in (0..=d).rev() {
                let c = &self.rows[i][d - i];
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                let body = c.to_string();
                let body = if body.contains(' ') { format!("({body})") } else { body };
                write!(f, "{body}")?;
                let j = d - i;
                for (v, e) in [("x", i), ("y", j)] {
                    match e {
                        0 => {}
                        1 => write!(f, "*{v}")?,
                        _ => write!(f, "*{v}^{e}")?,
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(deg {})", self.order + 1)
    }
}

impl<R: Ring> fmt::Debug for BiSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};
    use crate::series::exp_linear;
    use proptest::prelude::*;

    type B = BiSeries<Rational>;

    fn x_minus_y() -> [[Rational; 2]; 2] {
        [[int(1), int(0)], [int(1), int(-1)]]
    }

    #[test]
    fn exponential_addition() {
        let e = exp_linear(&int(1), 6);
        let sum = B::linear(&int(1), &int(1), 6).compose_into(&e).unwrap();
        assert_eq!(sum, B::from_x(&e).mul(&B::from_y(&e)));
    }

    #[test]
    fn first_nonzero_orders_by_degree() {
        let mut b = B::zero(5);
        b.set(0, 3, int(2));
        b.set(2, 1, int(7));
        b.set(1, 1, int(0));
        assert_eq!(b.first_nonzero(), Some((2, 1, &int(7))));
        assert_eq!(B::zero(3).first_nonzero(), None);
    }

    #[test]
    fn substitution_of_powers() {
        // x*y under y -> x - y is x^2 - x*y.
        let b = B::monomial(int(1), 1, 1, 4).linear_substitute(x_minus_y());
        let mut want = B::monomial(int(1), 2, 0, 4);
        want.set(1, 1, int(-1));
        assert_eq!(b, want);
    }

    fn arb_bi() -> impl Strategy<Value = B> {
        proptest::collection::vec((-4i64..5, 1i64..3), 15).prop_map(|cs| {
            let mut b = B::zero(4);
            let mut it = cs.into_iter();
            for i in 0..=4 {
                for j in 0..=4 - i {
                    let (n, d) = it.next().unwrap();
                    b.set(i, j, rat(n, d));
                }
            }
            b
        })
    }

    proptest! {
        #[test]
        fn swap_is_an_involution(b in arb_bi()) {
            prop_assert_eq!(b.swap().swap(), b.clone());
            let sym = b.add(&b.swap());
            prop_assert_eq!(sym.swap(), sym);
            let prod = b.mul(&b.swap());
            prop_assert_eq!(prod.swap(), prod);
        }

        #[test]
        fn y_to_x_minus_y_is_an_involution(b in arb_bi()) {
            prop_assert_eq!(b.linear_substitute(x_minus_y()).linear_substitute(x_minus_y()), b);
        }
    }
}
