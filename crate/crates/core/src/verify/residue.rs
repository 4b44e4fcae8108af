//! Residues `Res_t A(t)/(f(t) ∏ f(n_i - t))` in the nilpotent convention.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::{ExactValue, VerificationReport};
use crate::ring::{ParamPoly, Rational, Ring, Var};
use crate::series::nilpotent::{multi_residue_full, reciprocal, taylor_parts};
use crate::series::{LaurentSeries, Series};
use crate::weierstrass::{SigmaFamily, ZRing};

/// Coefficients `c_α` with `Res = Σ_{|α| ≤ d} c_α ∏ n_i^{α_i}`, zeros included.
pub fn residue_coefficients<R: Ring>(
    f: &Series<R>,
    a: &Series<R>,
    r: usize,
    d: usize,
) -> Result<BTreeMap<Vec<u32>, R>> {
    let h = reciprocal(f)?;
    let g = LaurentSeries::from_series(a, 0).mul(&h);
    let parts = taylor_parts(&h, d);
    multi_residue_full(&g, &parts, r, d)
}

/// `n1, n2, ...`
pub fn root_vars(r: usize) -> Vec<Var> {
    (1..=r).map(|i| Var::indexed("n", i)).collect()
}

/// The residue as a polynomial in the root variables `n_i`.
pub fn residue_polynomial(f: &Series<ParamPoly>, a: &Series<ParamPoly>, r: usize, d: usize) -> Result<ParamPoly> {
    let vars = root_vars(r);
    let mut out = ParamPoly::zero();
    for (alpha, c) in residue_coefficients(f, a, r, d)? {
        let mut m = c;
        for (v, &e) in vars.iter().zip(&alpha) {
            m = m.mul(&ParamPoly::of(*v).pow(e));
        }
        out = out.add(&m);
    }
    Ok(out)
}

/// Series order needed in `x` for a residue through degree `d` in `r` roots.
pub fn required_order(r: usize, d: usize) -> usize {
    r + d + 1
}

/// `Res_t A(t, r)/(f(t) ∏ f(n_i - t)) ≡ 0` through total degree `d` in the
/// `n_i`, for the σ-quotient genus. Coefficients are Laurent series in `z`;
/// the report states the `z`-precision through which they vanish, and
/// `min_z_order` rejects checks that would be vacuous.
pub fn residue_vanishing_s1(fam: &SigmaFamily, r: usize, d: usize, min_z_order: i64) -> VerificationReport {
    let check = format!("residue-vanishing/r={r}/degree={d}");
    VerificationReport::timed(&check.clone(), || {
        let n = required_order(r, d);
        let f = fam.f(n)?;
        let a = fam.jacobian_a(&Rational::from_integer(r.into()), n)?;
        let coeffs = residue_coefficients(&f, &a, r, d)?;
        let z_order = coeffs.values().filter_map(ZRing::order).min();
        if let Some(o) = z_order {
            if o < min_z_order {
                return Err(Error::Precondition(format!(
                    "residue only known through z^{o}; raise the z-order"
                )));
            }
        }
        let known = z_order.map_or("exactly".to_string(), |o| format!("through z^{o}"));
        Ok(
            match coeffs.iter().find(|(_, c)| !c.is_zero()) {
                None => VerificationReport::pass(
                    check.clone(),
                    format!("0 in all {} coefficients, {known}", coeffs.len()),
                    "0".into(),
                ),
                Some((alpha, c)) => VerificationReport::fail(
                    check.clone(),
                    c.exact(),
                    "0".into(),
                    format!("coefficient of n^{alpha:?}"),
                ),
            },
        )
    })
}

/// Residue check for an arbitrary pair `(f, A)`; used for negative controls.
pub fn residue_vanishes<R: Ring + ExactValue>(f: &Series<R>, a: &Series<R>, r: usize, d: usize) -> VerificationReport {
    let check = format!("residue-vanishing/r={r}/degree={d}");
    VerificationReport::timed(&check.clone(), || {
        let coeffs = residue_coefficients(f, a, r, d)?;
        Ok(match coeffs.iter().find(|(_, c)| !c.is_zero()) {
            None => VerificationReport::pass(check.clone(), "0".into(), "0".into()),
            Some((alpha, c)) => {
                VerificationReport::fail(check.clone(), c.exact(), "0".into(), format!("coefficient of n^{alpha:?}"))
            }
        })
    })
}

/// `p(x)` for an exact polynomial `p` given by its coefficients, truncated to
/// total degree `max` in `vars`.
fn eval_poly(p: &[ParamPoly], x: &ParamPoly, vars: &[Var], max: u32) -> ParamPoly {
    let mut acc = ParamPoly::zero();
    for c in p.iter().rev() {
        acc = acc.mul_truncated(x, vars, max).add(c);
    }
    acc.truncate_degree_in(vars, max)
}

/// Compares the nilpotent residue with the sum of the residues at `t = 0`
/// and `t = n_j`:
///
/// `1/∏ f(n_i) - Σ_j A(n_j)/(f(n_j) ∏_{i≠j} f(n_i - n_j))`.
///
/// `f` and `A` are taken as exact polynomials. Both sides are multiplied by
/// `M = ∏ f(n_i) ∏_{i≠k} f(n_i - n_k)`, which has valuation `r²`, and
/// compared through total degree `d + r²` in the `n_i`.
pub fn total_residue_identity(f: &Series<ParamPoly>, a: &Series<ParamPoly>, r: usize, d: usize) -> VerificationReport {
    let check = format!("total-residue/r={r}/degree={d}");
    VerificationReport::timed(&check.clone(), || {
        if r < 2 {
            return Err(Error::Precondition("the identity needs r >= 2".into()));
        }
        let vars = root_vars(r);
        let k = (d + r * r) as u32;
        let big = required_order(r, d) + 2;
        let pad = |s: &Series<ParamPoly>| Series::new(s.coeffs().to_vec(), big.max(s.order()));
        let (fp, ap) = (pad(f), pad(a));
        let n: Vec<ParamPoly> = vars.iter().map(|v| ParamPoly::of(*v)).collect();

        let f_at = |x: &ParamPoly| eval_poly(f.coeffs(), x, &vars, k);
        let a_at = |x: &ParamPoly| eval_poly(a.coeffs(), x, &vars, k);
        let f_n: Vec<ParamPoly> = n.iter().map(&f_at).collect();
        let mut f_diff = vec![vec![ParamPoly::zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                if i != j {
                    f_diff[i][j] = f_at(&n[i].sub(&n[j]));
                }
            }
        }
        let prod = |items: &mut dyn Iterator<Item = &ParamPoly>| {
            items.fold(ParamPoly::one(), |acc, p| acc.mul_truncated(p, &vars, k))
        };
        let pairs: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| (0..r).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let m = prod(&mut f_n.iter().chain(pairs.iter().map(|&(i, j)| &f_diff[i][j])));

        let lhs = residue_polynomial(&fp, &ap, r, d)?.mul_truncated(&m, &vars, k);

        // M/∏ f(n_i) and, for each j, M · A(n_j)/(f(n_j) ∏_{i≠j} f(n_i - n_j)).
        let mut rhs = prod(&mut pairs.iter().map(|&(i, j)| &f_diff[i][j]));
        for j in 0..r {
            let others = prod(&mut (0..r).filter(|&i| i != j).map(|i| &f_n[i]));
            let kept = prod(&mut pairs.iter().filter(|&&(_, b)| b != j).map(|&(i, b)| &f_diff[i][b]));
            let term = a_at(&n[j]).mul_truncated(&others, &vars, k).mul_truncated(&kept, &vars, k);
            rhs = rhs.sub(&term);
        }
        Ok(VerificationReport::compare(check.clone(), &lhs, &rhs))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funeq::derive_a_from_f;
    use crate::ring::int;
    use crate::series::one_minus_exp_neg;

    #[test]
    fn simple_residues() {
        let todd = one_minus_exp_neg::<Rational>(8);
        let one = Series::one(8);
        let c = residue_coefficients(&todd, &one, 2, 0).unwrap();
        assert_eq!(c[&vec![0, 0]], int(0));
        let euler = crate::genus::euler::<Rational>(8).f().clone();
        let c = residue_coefficients(&euler, &one, 2, 0).unwrap();
        assert_eq!(c[&vec![0, 0]], int(-1));
    }

    #[test]
    fn sigma_residue_vanishes() {
        let fam = SigmaFamily::generic(24);
        let r = residue_vanishing_s1(&fam, 2, 3, 0);
        assert!(r.is_pass(), "{}", r.summary());
    }

    #[test]
    fn negative_control() {
        let bad = Series::<Rational>::from_rationals(&[int(0), int(1), int(0), int(0), int(0), int(1)], 12);
        let a = derive_a_from_f(&bad, &int(0)).unwrap();
        assert!(!residue_vanishes(&bad, &a, 2, 4).is_pass());
    }

    #[test]
    fn total_residue_examples() {
        let lift = |s: &Series<Rational>| s.map(|q| ParamPoly::constant(q.clone()));
        let x = Series::<ParamPoly>::x(8);
        let a = Series::new(vec![ParamPoly::one(), ParamPoly::var("a1")], 8);
        let r = total_residue_identity(&x, &a, 2, 4);
        assert!(r.is_pass(), "{}", r.summary());
        let todd = lift(&one_minus_exp_neg::<Rational>(9));
        let r = total_residue_identity(&todd, &Series::one(9), 2, 3);
        assert!(r.is_pass(), "{}", r.summary());
        assert!(residue_polynomial(&todd, &Series::one(9), 2, 3).unwrap().is_zero());
    }
}
