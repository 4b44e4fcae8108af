//! The q-product characteristic series, with coefficients rational
//! functions in `y` and truncated power series in `q`.
//!
//! Per chern root the series is
//!
//! ```text
//! e^{kx} · x(1 - y⁻¹e^{-x})/(1 - e^{-x})
//!        · ∏_{m≥1} (1 - y⁻¹qᵐe^{-x})(1 - y qᵐe^{x}) / ((1 - qᵐe^{-x})(1 - qᵐe^{x}))
//! ```
//!
//! divided by its value at `x = 0`, which makes it the series of a rank-zero
//! virtual bundle and `f_q = x/Q` normalized with `f_q'(0) = 1`.

use super::{chi_y, Genus};
use crate::error::{Error, Result};
use crate::funeq::{check_fe, derive_a_from_f, solve_a1};
use crate::intersection::VarietyModel;
use crate::report::VerificationReport;
use crate::ring::{int, RatFunc, Rational, Ring, UniPoly};
use crate::series::{exp_linear, one_minus_exp_neg, LaurentSeries, Series};

/// Power series in `q` over `ℚ(y)`.
pub type QRing = LaurentSeries<RatFunc>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QProductParams {
    pub k: i64,
    /// Coefficients of `q^m` are kept for `m ≤ q_order`.
    pub q_order: usize,
    /// `f_q` is computed through `x^{x_order}`.
    pub x_order: usize,
}

fn y_inverse() -> RatFunc {
    RatFunc::new(UniPoly::constant(int(1)), UniPoly::x())
}

/// `1 - c qᵐ e^{s x}` through `x^n`.
fn factor(c: &RatFunc, m: usize, s: i64, n: usize, q_order: usize) -> Series<QRing> {
    let cq = LaurentSeries::truncated(m as i64, vec![c.clone()], q_order as i64);
    let e = exp_linear(&int(s), n).map(|q| cq.scale(q));
    Series::one(n).sub(&e)
}

/// Normalized characteristic series `Q` through `x^{x_order - 1}`.
pub fn q_product_series(p: QProductParams) -> Result<Series<QRing>> {
    if p.x_order < 1 {
        return Err(Error::Precondition("x_order must be at least 1".into()));
    }
    let n = p.x_order - 1;
    let qo = p.q_order;
    let lift = |q: &Rational| QRing::from_rational(q);
    let todd = one_minus_exp_neg::<Rational>(n + 1).div_x_pow(1)?.invert_unit()?.map(lift);
    let yinv = y_inverse();
    let y = RatFunc::y();
    let one = RatFunc::one();
    let mut acc = todd
        .mul(&exp_linear(&int(p.k), n).map(lift))
        .mul(&factor(&yinv, 0, -1, n, qo));
    for m in 1..=qo {
        acc = acc
            .mul(&factor(&yinv, m, -1, n, qo))
            .mul(&factor(&y, m, 1, n, qo))
            .mul(&factor(&one, m, -1, n, qo).invert_unit()?)
            .mul(&factor(&one, m, 1, n, qo).invert_unit()?);
    }
    let c0 = acc
        .coeff(0)
        .inverse()
        .ok_or_else(|| Error::NotInvertible("q-product value at x = 0".into()))?;
    Ok(acc.scale_by(&c0))
}

/// The genus with `f_q = x/Q`.
pub fn q_product_genus(p: QProductParams) -> Result<Genus<QRing>> {
    let q = q_product_series(p)?;
    Genus::new(format!("q-product(k={})", p.k), q.invert_unit()?.mul_x_pow(1))
}

/// The `q⁰` coefficient of every coefficient of `f_q`.
pub fn q_at_zero(g: &Genus<QRing>) -> Result<Genus<RatFunc>> {
    g.map(format!("{}|q=0", g.name()), |c| c.coeff(0))
}

/// `Σ_p χ(X, K^{-k} ⊗ Ω^p)(-y⁻¹)^p / (1 - y⁻¹)^n`: the value the `q = 0`
/// genus takes on an `n`-fold, from Riemann-Roch.
pub fn chi_y_normalized(x: &VarietyModel, k: i64) -> Result<RatFunc> {
    let chi = chi_y(x, k)?;
    let t = y_inverse().neg();
    let mut sum = RatFunc::zero();
    for (p, c) in chi.iter().enumerate() {
        sum = sum.add(&t.pow(p as u32).scale(c));
    }
    let den = RatFunc::one().sub(&y_inverse()).pow(x.dim() as u32);
    Ok(sum.mul(&den.inverse().expect("nonzero")))
}

/// Solves for `a1`, builds `A` from `f_q` and checks the functional equation
/// through total degree `order`.
pub fn q_product_fe(p: QProductParams, order: usize) -> VerificationReport {
    let check = format!("q-product-functional-equation/k={}", p.k);
    VerificationReport::timed(&check.clone(), || {
        let g = q_product_genus(p)?;
        let a1 = solve_a1(g.f(), order)?;
        if a1.order().is_some_and(|o| o < p.q_order as i64) {
            return Err(Error::Precondition(format!(
                "a1 only known through q^{}",
                a1.order().unwrap_or_default()
            )));
        }
        let a = derive_a_from_f(g.f(), &a1)?;
        Ok(check_fe(g.f(), &a, order).with_check(check.clone()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::genus_eval;
    use crate::intersection::projective_space;

    #[test]
    fn q_zero_closed_form() {
        // (1 - e^{-x})(1 - y⁻¹)/(1 - y⁻¹e^{-x}) · e^{-kx}
        for k in [0, 1, -2] {
            let p = QProductParams { k, q_order: 1, x_order: 6 };
            let f = q_at_zero(&q_product_genus(p).unwrap()).unwrap().f().clone();
            let lift = |q: &Rational| RatFunc::from_rational(q);
            let one_minus = one_minus_exp_neg::<Rational>(6).map(lift);
            let den = Series::one(6).sub(&exp_linear(&int(-1), 6).map(lift).scale_by(&y_inverse()));
            let expect = one_minus
                .scale_by(&RatFunc::one().sub(&y_inverse()))
                .mul(&den.invert_unit().unwrap())
                .mul(&exp_linear(&int(-k), 6).map(lift));
            assert_eq!(f, expect);
        }
    }

    #[test]
    fn twist_multiplies_by_an_exponential() {
        let g0 = q_product_genus(QProductParams { k: 0, q_order: 2, x_order: 6 }).unwrap();
        let g2 = q_product_genus(QProductParams { k: 2, q_order: 2, x_order: 6 }).unwrap();
        let e = exp_linear(&int(-2), 6).map(QRing::from_rational);
        assert_eq!(*g2.f(), g0.f().mul(&e));
    }

    #[test]
    fn q_zero_values_match_riemann_roch() {
        for k in [0, 1] {
            let g = q_at_zero(&q_product_genus(QProductParams { k, q_order: 1, x_order: 5 }).unwrap()).unwrap();
            for n in 1..=2 {
                let x = projective_space(n);
                assert_eq!(genus_eval(&g, &x).unwrap(), chi_y_normalized(&x, k).unwrap(), "P{n}, k = {k}");
            }
        }
    }

    #[test]
    fn functional_equation_membership() {
        let r = q_product_fe(QProductParams { k: 0, q_order: 2, x_order: 8 }, 8);
        assert!(r.is_pass(), "{}", r.summary());
    }

    #[test]
    fn a_missing_factor_breaks_the_equation() {
        let p = QProductParams { k: 0, q_order: 2, x_order: 8 };
        let g = q_product_genus(p).unwrap();
        // Remove (1 - y q e^x) from Q, i.e. multiply f by it, then renormalize.
        let extra = factor(&RatFunc::y(), 1, 1, 8, 2);
        let c0 = extra.coeff(0).inverse().unwrap();
        let f = g.f().mul(&extra).scale_by(&c0);
        let a1 = solve_a1(&f, 8).unwrap();
        let a = derive_a_from_f(&f, &a1).unwrap();
        assert!(!check_fe(&f, &a, 8).is_pass());
    }
}
