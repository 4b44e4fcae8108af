//! The functional equation
//!
//! `f(x-y) f(y-x) = A(x) f(y) f(x-y) + A(y) f(x) f(y-x)`
//!
//! solved degree by degree over `ℚ[a1, f3, f4]`, together with the derivation
//! of `A` from `f`, the defect check for arbitrary pairs `(f, A)`, and the
//! passage from a solution to Weierstrass data.
//!
//! Normalization: `f1 = 1`, `f2 = 0`, `a0 = 1`. The general solution is
//! recovered by the twist `(e^{kx} f, e^{-kx} A)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{ExactValue, VerificationReport};
use crate::ring::{binomial, int, sign, ParamPoly, Rational, Ring, Var};
use crate::series::json::{series_from_json, series_to_json, JsonTerm};
use crate::series::nilpotent::reciprocal;
use crate::series::{exp_linear, BiSeries, LaurentSeries, Series};
use crate::weierstrass::wp_series;

/// Free parameters of a normalized solution, in serialization order.
pub const PARAMETERS: [&str; 3] = ["a1", "f3", "f4"];

pub fn parameter_vars() -> Vec<Var> {
    PARAMETERS.iter().map(|s| Var::new(s)).collect()
}

/// What happened at one homogeneous degree `d` of the solve.
///
/// Relation `p` is the coefficient of `x^p y^{d-p}`, `0 <= p <= d`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeRecord {
    pub degree: usize,
    /// Relations in which the new `a_{d-2}` appears.
    pub a_support: Vec<usize>,
    /// Coefficient of the new `f_{d-1}` in each relation.
    pub f_coefficients: Vec<Rational>,
    /// Rank of the linear system in the unknowns solved at this degree.
    pub rank: usize,
    pub solved_a: Option<ParamPoly>,
    pub solved_f: Option<ParamPoly>,
}

#[derive(Clone, Debug)]
pub struct FESolution {
    order: usize,
    f: Series<ParamPoly>,
    a: Series<ParamPoly>,
    records: Vec<DegreeRecord>,
    twist: Option<ParamPoly>,
}

impl FESolution {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn f(&self) -> &Series<ParamPoly> {
        &self.f
    }

    /// The series `A`.
    pub fn a(&self) -> &Series<ParamPoly> {
        &self.a
    }

    pub fn f_coeff(&self, i: usize) -> &ParamPoly {
        self.f.coeff(i)
    }

    pub fn a_coeff(&self, i: usize) -> &ParamPoly {
        self.a.coeff(i)
    }

    pub fn records(&self) -> &[DegreeRecord] {
        &self.records
    }

    pub fn twist(&self) -> Option<&ParamPoly> {
        self.twist.as_ref()
    }

    /// `(e^{kx} f, e^{-kx} A)`, which solves the same equation.
    pub fn twisted(&self, k: ParamPoly) -> FESolution {
        let n = self.order;
        let total = match &self.twist {
            Some(k0) => k0.add(&k),
            None => k.clone(),
        };
        FESolution {
            order: n,
            f: exp_linear(&k, n).mul(&self.f),
            a: exp_linear(&k.neg(), n).mul(&self.a),
            records: self.records.clone(),
            twist: Some(total),
        }
    }

    pub fn to_json(&self) -> Result<FESolutionJson> {
        let mut vars = parameter_vars();
        if let Some(k) = &self.twist {
            for v in k.variables() {
                if !vars.contains(&v) {
                    vars.push(v);
                }
            }
        }
        Ok(FESolutionJson {
            order: self.order,
            variables: vars.iter().map(Var::name).collect(),
            f: series_to_json(&self.f, &vars)?,
            a: series_to_json(&self.a, &vars)?,
        })
    }
}

/// `{"order": n, "variables": [...], "f": [...], "A": [...]}`; the first
/// exponent of each term is the power of `x`, the rest follow `variables`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FESolutionJson {
    pub order: usize,
    pub variables: Vec<String>,
    pub f: Vec<JsonTerm>,
    #[serde(rename = "A")]
    pub a: Vec<JsonTerm>,
}

impl FESolutionJson {
    /// `(f, A)` back as series.
    pub fn series(&self) -> Result<(Series<ParamPoly>, Series<ParamPoly>)> {
        let vars = self
            .variables
            .iter()
            .map(|s| Var::parse(s))
            .collect::<Result<Vec<_>>>()?;
        Ok((
            series_from_json(&self.f, self.order, &vars)?,
            series_from_json(&self.a, self.order, &vars)?,
        ))
    }
}

/// Coefficients of `x^p y^{d-p}`, `p = 0..=d`, of
/// `f(x-y)f(y-x) - A(x)f(y)f(x-y) - A(y)f(x)f(y-x)`, using only
/// `f_1..f_{d-1}` and `a_0..a_{d-2}`.
///
/// With `S = Σ_{i+j=d} (-1)^j f_i f_j` and
/// `T_p = Σ_{a+b+c=d} a_a f_b f_c C(c, p-a) (-1)^{d-p-b}` the relation is
/// `C(d,p)(-1)^{d-p} S - T_p - T_{d-p}`.
fn homogeneous_relations<R: Ring>(f: &[R], a: &[R], d: usize) -> Vec<R> {
    let fc = |i: usize| f.get(i).cloned().unwrap_or_else(R::zero);
    let ac = |i: usize| a.get(i).cloned().unwrap_or_else(R::zero);

    let mut s = R::zero();
    for i in 1..d {
        let t = fc(i).mul(&fc(d - i));
        s.add_assign(&t.scale(&sign((d - i) as i64)));
    }

    let mut t = vec![R::zero(); d + 1];
    for aa in 0..=d.saturating_sub(2) {
        let ai = ac(aa);
        if ai.is_zero() {
            continue;
        }
        for b in 1..d - aa {
            let c = d - aa - b;
            let fb = fc(b);
            if fb.is_zero() {
                continue;
            }
            let prod = ai.mul(&fb).mul(&fc(c));
            if prod.is_zero() {
                continue;
            }
            for p in aa..=aa + c {
                let k = binomial(c as i64, (p - aa) as i64) * sign((d - p - b) as i64);
                t[p].add_assign(&prod.scale(&k));
            }
        }
    }

    (0..=d)
        .map(|p| {
            s.scale(&(binomial(d as i64, p as i64) * sign((d - p) as i64)))
                .sub(&t[p])
                .sub(&t[d - p])
        })
        .collect()
}

fn linear_part(r: &ParamPoly, v: Var, degree: usize) -> Result<Rational> {
    if r.degree_of(v) > 1 {
        return Err(Error::Inconsistent {
            degree,
            detail: format!("relation is not linear in {v}"),
        });
    }
    r.coefficient_of(v, 1).as_constant().ok_or_else(|| Error::Inconsistent {
        degree,
        detail: format!("coefficient of {v} is not a constant"),
    })
}

/// Solves the equation through `x^order` for both `f` and `A`.
///
/// At degree `d` the new unknowns are `a_{d-2}` (from `d = 4`) and `f_{d-1}`
/// (from `d = 6`; `f3`, `f4` stay free). Every relation at every degree is
/// certified after substitution.
pub fn solve_fe(order: usize) -> Result<FESolution> {
    if order < 4 {
        return Err(Error::Precondition(format!("solve_fe needs order >= 4, got {order}")));
    }
    let ua = Var::new("ua");
    let uf = Var::new("uf");
    let mut f = vec![ParamPoly::zero(); order + 2];
    let mut a = vec![ParamPoly::zero(); order + 1];
    f[1] = ParamPoly::one();
    f[3] = ParamPoly::var("f3");
    f[4] = ParamPoly::var("f4");
    a[0] = ParamPoly::one();
    a[1] = ParamPoly::var("a1");

    let mut records = Vec::new();
    for d in 3..=order + 2 {
        let solve_a = d >= 4;
        let solve_f = d >= 6;
        if solve_a {
            a[d - 2] = ParamPoly::of(ua);
        }
        if solve_f {
            f[d - 1] = ParamPoly::of(uf);
        }
        let rels = homogeneous_relations(&f, &a, d);

        let mut alpha = Vec::with_capacity(d + 1);
        let mut beta = Vec::with_capacity(d + 1);
        let mut gamma = Vec::with_capacity(d + 1);
        for r in &rels {
            alpha.push(linear_part(r, ua, d)?);
            beta.push(linear_part(r, uf, d)?);
            gamma.push(r.coefficient_of(ua, 0).coefficient_of(uf, 0));
        }

        let mut values = BTreeMap::new();
        let rank;
        if solve_f {
            let pivot = (0..=d)
                .flat_map(|p| (p + 1..=d).map(move |q| (p, q)))
                .find_map(|(p, q)| {
                    let det = &alpha[p] * &beta[q] - &alpha[q] * &beta[p];
                    (!Ring::is_zero(&det)).then_some((p, q, det))
                });
            let (p, q, det) = pivot.ok_or_else(|| Error::Inconsistent {
                degree: d,
                detail: "fewer than two independent relations".into(),
            })?;
            let inv = Ring::inverse(&det).expect("nonzero rational");
            let va = gamma[q].scale(&beta[p]).sub(&gamma[p].scale(&beta[q])).scale(&inv);
            let vf = gamma[p].scale(&alpha[q]).sub(&gamma[q].scale(&alpha[p])).scale(&inv);
            values.insert(ua, va);
            values.insert(uf, vf);
            rank = 2;
        } else if solve_a {
            let p = (0..=d).find(|&p| !Ring::is_zero(&alpha[p])).ok_or_else(|| {
                Error::Inconsistent {
                    degree: d,
                    detail: format!("a_{} appears in no relation", d - 2),
                }
            })?;
            let inv = Ring::inverse(&alpha[p]).expect("nonzero rational");
            values.insert(ua, gamma[p].scale(&-inv));
            rank = 1;
        } else {
            rank = 0;
        }

        for (p, r) in rels.iter().enumerate() {
            let residual = r.substitute(&values);
            if !residual.is_zero() {
                return Err(Error::Inconsistent {
                    degree: d,
                    detail: format!("relation x^{p} y^{} leaves {residual}", d - p),
                });
            }
        }

        let solved_a = values.get(&ua).cloned();
        let solved_f = values.get(&uf).cloned();
        if let Some(v) = &solved_a {
            if d - 2 <= order {
                a[d - 2] = v.clone();
            }
        }
        if let Some(v) = &solved_f {
            f[d - 1] = v.clone();
        }
        records.push(DegreeRecord {
            degree: d,
            a_support: (0..=d).filter(|&p| !Ring::is_zero(&alpha[p])).collect(),
            f_coefficients: beta,
            rank,
            solved_a,
            solved_f,
        });
    }

    f.truncate(order + 1);
    Ok(FESolution {
        order,
        f: Series::new(f, order),
        a: Series::new(a, order),
        records,
        twist: None,
    })
}

/// `A(x) = -a1 f(-x) - f(-x) f'(x)/f(x)`, through `x^{order(f) - 1}`.
///
/// With `f = x U(x)` the quotient is `-U(-x) f'(x)/U(x)`, so only a unit is
/// inverted.
pub fn derive_a_from_f<R: Ring>(f: &Series<R>, a1: &R) -> Result<Series<R>> {
    if !f.coeff(0).is_zero() || !f.coeff(1).is_one() {
        return Err(Error::Precondition("derive_a_from_f needs f(0) = 0, f'(0) = 1".into()));
    }
    let n = f.order() - 1;
    let u = f.div_x_pow(1)?;
    let quotient = u.neg_arg().mul(&f.derivative()).mul(&u.invert_unit()?);
    Ok(f.neg_arg().truncate(n).scale_by(a1).neg().add(&quotient))
}

/// The defect `f(x-y)f(y-x) - A(x)f(y)f(x-y) - A(y)f(x)f(y-x)` together with
/// the total degree through which it is determined by the inputs.
pub fn fe_defect<R: Ring>(f: &Series<R>, a: &Series<R>, order: usize) -> Result<BiSeries<R>> {
    let t = order.min(f.order() + 1).min(a.order() + 2);
    let fp = Series::new(f.coeffs().to_vec(), t);
    let ap = Series::new(a.coeffs().to_vec(), t);
    let x_minus_y = BiSeries::linear(&int(1), &int(-1), t).compose_into(&fp)?;
    let y_minus_x = x_minus_y.linear_substitute([[int(-1), int(0)], [int(0), int(-1)]]);
    let fx = BiSeries::from_x(&fp);
    let fy = BiSeries::from_y(&fp);
    let ax = BiSeries::from_x(&ap);
    let ay = BiSeries::from_y(&ap);
    let lhs = x_minus_y.mul(&y_minus_x);
    let rhs = ax
        .mul(&fy)
        .mul(&x_minus_y)
        .add(&ay.mul(&fx).mul(&y_minus_x));
    Ok(lhs.sub(&rhs))
}

/// Reports the first nonzero coefficient of a bivariate defect.
pub fn defect_report<R: Ring + ExactValue>(check: &str, defect: &BiSeries<R>) -> VerificationReport {
    match defect.first_nonzero() {
        None => VerificationReport::pass(check, "0/1".into(), "0/1".into()),
        Some((i, j, c)) => VerificationReport::fail(
            check,
            c.exact(),
            "0/1".into(),
            format!("x^{i}*y^{j} (total degree {})", i + j),
        ),
    }
}

/// Checks the functional equation for `(f, A)` through total degree
/// `min(order, order(f) + 1, order(A) + 2)`.
pub fn check_fe<R: Ring + ExactValue>(f: &Series<R>, a: &Series<R>, order: usize) -> VerificationReport {
    VerificationReport::timed("functional-equation", || {
        let d = fe_defect(f, a, order)?;
        Ok(defect_report("functional-equation", &d))
    })
}

/// The `a1` for which `(f, derive_a_from_f(f, a1))` can satisfy the equation.
///
/// The defect is affine in `a1`; the first nonzero coefficient of its linear
/// part fixes the value, which must then be checked with [`check_fe`].
pub fn solve_a1<R: Ring>(f: &Series<R>, order: usize) -> Result<R> {
    let a0 = derive_a_from_f(f, &R::zero())?;
    let a_one = derive_a_from_f(f, &R::one())?;
    let d0 = fe_defect(f, &a0, order)?;
    let d1 = fe_defect(f, &a_one, order)?.sub(&d0);
    let (i, j, c) = d1.first_nonzero().ok_or_else(|| {
        Error::Precondition("the equation does not constrain a1 at this order".into())
    })?;
    let inv = c.inverse().ok_or_else(|| {
        Error::NotInvertible(format!("coefficient of a1 at x^{i}*y^{j} is not a unit"))
    })?;
    Ok(d0.coeff(i, j).mul(&inv).neg())
}

/// `f(x+y) - f'(x)f(y) - f'(y)f(x)` vanishes through total degree
/// `min(order, order(f))`; true exactly for `f = sinh(sx)/s`.
pub fn torsion2_check<R: Ring + ExactValue>(f: &Series<R>, order: usize) -> VerificationReport {
    VerificationReport::timed("two-torsion-addition", || {
        if !f.coeff(0).is_zero() {
            return Err(Error::Precondition("f(0) must vanish".into()));
        }
        let t = order.min(f.order());
        let fp = f.truncate(t);
        let sum = BiSeries::linear(&int(1), &int(1), t).compose_into(&fp)?;
        let d = fp.derivative();
        let rhs = BiSeries::from_x_to(&d, t)
            .mul(&BiSeries::from_y(&fp))
            .add(&BiSeries::from_y_to(&d, t).mul(&BiSeries::from_x(&fp)));
        Ok(defect_report("two-torsion-addition", &sum.sub(&rhs)))
    })
}

/// `a = 2f3`, `b = 6f4`, `g2 = 48 f3² - 24 a1 f4`, `g3 = 4a³ - g2 a - b²`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassDictionary {
    pub a: ParamPoly,
    pub b: ParamPoly,
    pub g2: ParamPoly,
    pub g3: ParamPoly,
}

impl WeierstrassDictionary {
    pub fn new(a1: &ParamPoly, f3: &ParamPoly, f4: &ParamPoly) -> Self {
        let a = f3.scale(&int(2));
        let b = f4.scale(&int(6));
        let g2 = f3.mul(f3).scale(&int(48)).sub(&a1.mul(f4).scale(&int(24)));
        let g3 = a.pow(3).scale(&int(4)).sub(&g2.mul(&a)).sub(&b.mul(&b));
        WeierstrassDictionary { a, b, g2, g3 }
    }

    /// In the free parameters `a1, f3, f4`.
    pub fn generic() -> Self {
        Self::new(&ParamPoly::var("a1"), &ParamPoly::var("f3"), &ParamPoly::var("f4"))
    }
}

/// Compares two Laurent series on the exponents both know.
fn laurent_report(check: &str, lhs: &LaurentSeries<ParamPoly>, rhs: &LaurentSeries<ParamPoly>) -> VerificationReport {
    let diff = lhs.sub(rhs);
    let first = diff.terms().find(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone()));
    match first {
        None => VerificationReport::pass(check, lhs.exact(), rhs.exact()),
        Some((k, c)) => VerificationReport::fail(
            check,
            lhs.exact(),
            rhs.exact(),
            format!("x^{k}: difference {}", c.exact()),
        ),
    }
}

/// The Weierstrass checks for a normalized `f` with parameter `a1`:
/// `P = -1/(f(x)f(-x)) + 2f3` satisfies `P'' - 6P² = 12 a1 f4 - 24 f3²` and
/// equals `℘` for the dictionary's `(g2, g3)`; with `g = 1/f`,
/// `g'(x)g(-x) + g'(-x)g(x) = 6f4` and `g''(x)g(-x) = g''(-x)g(x)`.
pub fn weierstrass_checks(
    f: &Series<ParamPoly>,
    a1: &ParamPoly,
) -> Result<(WeierstrassDictionary, VerificationReport)> {
    if f.order() < 8 {
        return Err(Error::Precondition(format!(
            "Weierstrass recovery needs f through x^8, got x^{}",
            f.order()
        )));
    }
    if !f.coeff(2).is_zero() {
        return Err(Error::Precondition("expected the normalization f2 = 0".into()));
    }
    let f3 = f.coeff(3).clone();
    let f4 = f.coeff(4).clone();
    let dict = WeierstrassDictionary::new(a1, &f3, &f4);

    let g = reciprocal(f)?;
    let g_neg = g.neg_arg();
    let p = g
        .mul(&g_neg)
        .neg()
        .add(&LaurentSeries::monomial(f3.scale(&int(2)), 0));

    let constant = a1.mul(&f4).scale(&int(12)).sub(&f3.mul(&f3).scale(&int(24)));
    let ode = p.derivative().derivative().sub(&p.mul(&p).scale(&int(6)));
    let ode = laurent_report(
        "P''-6P^2 is constant",
        &ode,
        &LaurentSeries::monomial(constant, 0),
    );

    let g1 = g.derivative();
    let wronskian = g1.mul(&g_neg).add(&g1.neg_arg().mul(&g));
    let wronskian = laurent_report(
        "g'(x)g(-x)+g'(-x)g(x) = 6f4",
        &wronskian,
        &LaurentSeries::monomial(f4.scale(&int(6)), 0),
    );

    let g2nd = g1.derivative();
    let sym = laurent_report(
        "g''(x)g(-x) = g''(-x)g(x)",
        &g2nd.mul(&g_neg),
        &g2nd.neg_arg().mul(&g),
    );

    let order = p.order().unwrap_or(0).max(2) as usize;
    let wp = wp_series(&dict.g2, &dict.g3, order);
    let wp = laurent_report("P = wp(g2, g3)", &p, &wp);

    let report = VerificationReport::all("weierstrass-recovery", vec![ode, wronskian, sym, wp]);
    Ok((dict, report))
}

/// [`weierstrass_checks`] on a solver output.
pub fn weierstrass_from_fe(s: &FESolution) -> Result<(WeierstrassDictionary, VerificationReport)> {
    if s.twist.is_some() {
        return Err(Error::Precondition("untwist the solution first".into()));
    }
    weierstrass_checks(&s.f, s.a.coeff(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use crate::series::one_minus_exp_neg;
    use crate::weierstrass::{sinh_cosh, AlgebraicFamily};
    use proptest::prelude::*;

    fn v(s: &str) -> ParamPoly {
        ParamPoly::var(s)
    }

    fn q(n: i64, d: i64) -> ParamPoly {
        ParamPoly::constant(rat(n, d))
    }

    #[test]
    fn low_degree_relations() {
        let s = solve_fe(6).unwrap();
        assert_eq!(s.a_coeff(2), &v("f3").scale(&int(3)));
        assert_eq!(s.a_coeff(3), &v("f4").scale(&int(2)).add(&v("a1").mul(&v("f3"))));
        let a4 = v("a1").mul(&v("f4")).scale(&int(2)).add(&v("f3").pow(2).scale(&rat(3, 2)));
        assert_eq!(s.a_coeff(4), &a4);
        let f5 = v("f3").pow(2).scale(&rat(3, 10)).add(&v("a1").mul(&v("f4")).scale(&rat(3, 5)));
        assert_eq!(s.f_coeff(5), &f5);
        assert_eq!(s.f_coeff(5).to_string(), "3/5*a1*f4 + 3/10*f3^2");
    }

    #[test]
    fn uniqueness_bookkeeping() {
        let s = solve_fe(14).unwrap();
        for r in s.records() {
            let d = r.degree;
            if d >= 4 {
                // a_{d-2} enters through a_{d-2} f1 f1 in T_p and T_{d-p}.
                let mut want = vec![1, 2, d - 2, d - 1];
                want.sort();
                want.dedup();
                assert_eq!(r.a_support, want, "degree {d}");
            }
            if d >= 6 {
                assert_eq!(r.rank, 2);
                for p in 2..=d - 2 {
                    let (d, p) = (d as i64, p as i64);
                    let closed = -sign(p) * (binomial(d - 1, p) + sign(d) * binomial(d - 1, p - 1));
                    assert_eq!(r.f_coefficients[p as usize], closed, "d={d} p={p}");
                    assert!(!Ring::is_zero(&closed));
                }
                let d = d as i64;
                let textbook = |p: i64| {
                    binomial(d, p) + sign(d) * binomial(d, p) + sign(d) * binomial(d - 1, p) + binomial(d - 1, p - 1)
                };
                assert!((1..d).any(|p| !Ring::is_zero(&textbook(p))));
            }
        }
    }

    #[test]
    fn matches_algebraic_family() {
        let s = solve_fe(10).unwrap();
        let dict = WeierstrassDictionary::generic();
        let family = AlgebraicFamily {
            k: ParamPoly::zero(),
            a: dict.a.clone(),
            b: dict.b.clone(),
            g2: dict.g2.clone(),
        };
        assert_eq!(family.g3(), dict.g3);
        assert_eq!(family.f(10).unwrap(), *s.f());
    }

    #[test]
    fn derived_jacobian_factor() {
        let a1 = v("a1");
        let x = Series::<ParamPoly>::x(6);
        let a = derive_a_from_f(&x, &a1).unwrap();
        assert_eq!(a, Series::new(vec![ParamPoly::one(), a1.clone()], 5));

        let todd = one_minus_exp_neg::<Rational>(10);
        assert_eq!(derive_a_from_f(&todd, &int(0)).unwrap(), Series::one(9));

        let s = solve_fe(10).unwrap();
        let a = derive_a_from_f(s.f(), s.a_coeff(1)).unwrap();
        assert_eq!(a, s.a().truncate(9));
    }

    #[test]
    fn fe_examples() {
        let a1 = v("a1");
        let x = Series::<ParamPoly>::x(12);
        let a = Series::new(vec![ParamPoly::one(), a1], 12);
        assert!(check_fe(&x, &a, 12).is_pass());

        let todd = one_minus_exp_neg::<Rational>(12);
        assert!(check_fe(&todd, &Series::one(12), 12).is_pass());

        let bad = Series::<Rational>::from_rationals(&[int(0), int(1), int(0), int(0), int(0), int(1)], 8);
        let a = derive_a_from_f(&bad, &int(0)).unwrap();
        let r = check_fe(&bad, &a, 9);
        assert!(!r.is_pass());
        let at = r.first_discrepancy.unwrap();
        let degree: usize = at.rsplit(' ').next().unwrap().trim_end_matches(')').parse().unwrap();
        assert!(degree <= 8, "{at}");

        let s = solve_fe(12).unwrap();
        assert!(check_fe(s.f(), s.a(), 13).is_pass());
    }

    #[test]
    fn twist_covariance() {
        let s = solve_fe(9).unwrap().twisted(v("k"));
        assert!(check_fe(s.f(), s.a(), 10).is_pass());
        assert_eq!(s.f_coeff(2), &v("k"));
        assert!(weierstrass_from_fe(&s).is_err());
    }

    #[test]
    fn weierstrass_recovery() {
        let x = Series::<ParamPoly>::x(10);
        let (dict, r) = weierstrass_checks(&x, &ParamPoly::zero()).unwrap();
        assert!(r.is_pass(), "{}", r.summary());
        assert!(dict.g2.is_zero() && dict.g3.is_zero());

        let s = solve_fe(10).unwrap();
        let (dict, r) = weierstrass_from_fe(&s).unwrap();
        assert!(r.is_pass(), "{}", r.summary());
        assert_eq!(dict.b, v("f4").scale(&int(6)));
        assert_eq!(dict.g2.to_string(), "-24*a1*f4 + 48*f3^2");

        let mut wrong = s.f().clone();
        wrong.set(7, wrong.coeff(7).add(&q(1, 1)));
        let (_, r) = weierstrass_checks(&wrong, s.a_coeff(1)).unwrap();
        assert!(!r.is_pass());
    }

    #[test]
    fn two_torsion() {
        assert!(torsion2_check(&Series::<Rational>::x(10), 10).is_pass());
        let (sinh, _) = sinh_cosh(&v("s2"), 10);
        assert!(torsion2_check(&sinh, 10).is_pass());
        let cubic = Series::<Rational>::from_rationals(&[int(0), int(1), int(0), int(1)], 10);
        let r = torsion2_check(&cubic, 10);
        assert!(r.first_discrepancy.unwrap().contains("total degree 5"));
    }

    #[test]
    fn a1_from_the_defect() {
        let s = solve_fe(10).unwrap();
        let spec: BTreeMap<Var, Rational> = [("a1", rat(2, 3)), ("f3", rat(-1, 2)), ("f4", int(3))]
            .into_iter()
            .map(|(n, c)| (Var::new(n), c))
            .collect();
        let f = s.f().map(|c| c.specialize(&spec).as_constant().unwrap());
        assert_eq!(solve_a1(&f, 11).unwrap(), rat(2, 3));
    }

    #[test]
    fn json_round_trip() {
        let s = solve_fe(7).unwrap();
        let j = s.to_json().unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"A\""));
        let back: FESolutionJson = serde_json::from_str(&text).unwrap();
        let (f, a) = back.series().unwrap();
        assert_eq!(&f, s.f());
        assert_eq!(&a, s.a());
    }

    fn arb_pair() -> impl Strategy<Value = (Series<Rational>, Series<Rational>)> {
        (
            proptest::collection::vec(-3i64..4, 6),
            proptest::collection::vec(-3i64..4, 6),
        )
            .prop_map(|(fs, as_)| {
                let mut f = vec![int(0), int(1)];
                f.extend(fs.iter().map(|&c| int(c)));
                let mut a = vec![int(1)];
                a.extend(as_.iter().map(|&c| int(c)));
                (Series::new(f, 7), Series::new(a, 6))
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn defect_is_symmetric((f, a) in arb_pair()) {
            let d = fe_defect(&f, &a, 8).unwrap();
            prop_assert_eq!(d.swap(), d);
        }

        #[test]
        fn specialized_solutions_pass(a1 in -5i64..6, f3 in -5i64..6, f4 in -5i64..6) {
            let s = solve_fe(8).unwrap();
            let spec: BTreeMap<Var, Rational> =
                [("a1", a1), ("f3", f3), ("f4", f4)].into_iter().map(|(n, c)| (Var::new(n), int(c))).collect();
            let f = s.f().map(|c| c.specialize(&spec).as_constant().unwrap());
            let a = s.a().map(|c| c.specialize(&spec).as_constant().unwrap());
            prop_assert!(check_fe(&f, &a, 9).is_pass());
        }
    }
}
