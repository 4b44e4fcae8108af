//! Expansions in a nilpotent shift `n` and multi-root residues.
//!
//! A formal chern root `n` is modelled by power series in `n` truncated at a
//! fixed degree `D`: coefficients of `t^k` are [`LaurentSeries`] in `n` of
//! order `D`. Under this model `1/(n - t)` means `-Σ_{j<=D} n^j / t^{j+1}`.
//!
//! For several roots the product `∏ 1/f(n_i - t)` factors through the Taylor
//! decomposition `1/f(n - t) = Σ_j n^j h_j(t)` with `h_j(t) = h^{(j)}(-t)/j!`
//! and `h = 1/f`, so each multi-index coefficient is a univariate residue.

use std::collections::BTreeMap;

use super::{LaurentSeries, Series};
use crate::error::{Error, Result};
use crate::ring::{binomial, factorial, sign, Ring};

/// Truncated power series in a nilpotent parameter `n`.
pub type Nil<R> = LaurentSeries<R>;

/// `c n^j` in the nilpotent ring of order `d`.
pub fn nil_monomial<R: Ring>(c: R, j: usize, d: usize) -> Nil<R> {
    if j > d {
        return Nil::zero_to(d as i64);
    }
    let mut coeffs = vec![R::zero(); j + 1];
    coeffs[j] = c;
    Nil::truncated(0, coeffs, d as i64)
}

/// `s(n - t)` as a Laurent series in `t` over the nilpotent ring of order `d`.
///
/// The coefficient of `t^m` needs `s_{m+j}` for `j <= d`, so the result is
/// known through `t^{order(s) - d}`.
pub fn shifted_argument<R: Ring>(s: &Series<R>, d: usize) -> Result<LaurentSeries<Nil<R>>> {
    let n = s.order();
    if n < d {
        return Err(Error::Precondition(format!(
            "series of order {n} cannot be shifted by a nilpotent of degree {d}"
        )));
    }
    let t_order = n - d;
    let coeffs = (0..=t_order)
        .map(|m| {
            let cs = (0..=d)
                .map(|j| {
                    s.coeff(m + j)
                        .scale(&(binomial((m + j) as i64, j as i64) * sign(m as i64)))
                })
                .collect();
            Nil::truncated(0, cs, d as i64)
        })
        .collect();
    Ok(LaurentSeries::truncated(0, coeffs, t_order as i64))
}

/// `1/f(n - t)` as `U(n - t)^{-1} · (-Σ_{j<=d} n^j / t^{j+1})` where
/// `f = x U(x)`.
pub fn reciprocal_shifted<R: Ring>(f: &Series<R>, d: usize) -> Result<LaurentSeries<Nil<R>>> {
    if f.valuation() != Some(1) {
        return Err(Error::Precondition(
            "reciprocal_shifted needs a series of valuation exactly one".into(),
        ));
    }
    let u = f.div_x_pow(1)?;
    let u_shift = shifted_argument(&u, d)?;
    let u_inv = u_shift.try_inverse()?;
    let tail = (0..=d)
        .rev()
        .map(|j| nil_monomial(R::from_int(-1), j, d))
        .collect();
    let geometric = LaurentSeries::exact(-(d as i64) - 1, tail);
    Ok(nil_reduce(&u_inv.mul(&geometric), d))
}

/// Imposes `n^{d+1} = 0` on every coefficient. Products of truncated series
/// in `n` know more than degree `d`; the nilpotent quotient forgets it.
pub fn nil_reduce<R: Ring>(l: &LaurentSeries<Nil<R>>, d: usize) -> LaurentSeries<Nil<R>> {
    l.map(|c| c.truncate(d as i64))
}

/// `h_j(t) = h^{(j)}(-t)/j!` for `j = 0..=d`, so that
/// `h(n - t) = Σ_j n^j h_j(t)`.
pub fn taylor_parts<R: Ring>(h: &LaurentSeries<R>, d: usize) -> Vec<LaurentSeries<R>> {
    let mut out = Vec::with_capacity(d + 1);
    let mut deriv = h.clone();
    for j in 0..=d {
        if j > 0 {
            deriv = deriv.derivative();
        }
        out.push(deriv.neg_arg().scale(&factorial(j as u64).recip()));
    }
    out
}

/// Coefficients `c_α = Res_t(g · ∏_i parts[α_i])` for every `α ∈ ℕ^r` with
/// `|α| <= d`, keyed by the exponent vector `α`.
///
/// Equivalently, `Res_t(g(t) ∏_i h(n_i - t)) = Σ_α c_α ∏ n_i^{α_i}` when
/// `parts = taylor_parts(h, d)`. Zero coefficients are omitted.
pub fn multi_residue<R: Ring>(
    g: &LaurentSeries<R>,
    parts: &[LaurentSeries<R>],
    r: usize,
    d: usize,
) -> Result<BTreeMap<Vec<u32>, R>> {
    let mut all = multi_residue_full(g, parts, r, d)?;
    all.retain(|_, c| !c.is_zero());
    Ok(all)
}

/// [`multi_residue`] keeping zero coefficients, whose precision matters when
/// `R` is itself truncated.
pub fn multi_residue_full<R: Ring>(
    g: &LaurentSeries<R>,
    parts: &[LaurentSeries<R>],
    r: usize,
    d: usize,
) -> Result<BTreeMap<Vec<u32>, R>> {
    if parts.len() <= d {
        return Err(Error::Precondition(format!(
            "need Taylor parts through degree {d}, have {}",
            parts.len()
        )));
    }
    let mut sorted = Vec::new();
    let mut alpha = Vec::with_capacity(r);
    descend(g, parts, r, d, 0, &mut alpha, &mut sorted)?;

    let mut out = BTreeMap::new();
    for (alpha, c) in sorted {
        for perm in distinct_permutations(&alpha) {
            out.insert(perm, c.clone());
        }
    }
    Ok(out)
}

/// Depth-first over non-decreasing multi-indices, keeping only the part of
/// each prefix product that can still reach `t^{-1}`.
fn descend<R: Ring>(
    prefix: &LaurentSeries<R>,
    parts: &[LaurentSeries<R>],
    r: usize,
    budget: usize,
    min_index: usize,
    alpha: &mut Vec<u32>,
    out: &mut Vec<(Vec<u32>, R)>,
) -> Result<()> {
    let remaining = r - alpha.len();
    if remaining == 0 {
        out.push((alpha.clone(), prefix.residue()?));
        return Ok(());
    }
    for j in min_index..=budget {
        // The other factors have valuation >= -1 - α_i; only prefix terms up to
        // t^{-1 + Σ(1 + α_i)} can contribute.
        if (remaining - 1) * j > budget - j {
            break;
        }
        let rest_poles = (remaining - 1) + (budget - j);
        let need = -1 + rest_poles as i64;
        let p = prefix.mul(&parts[j]).truncate(need);
        alpha.push(j as u32);
        descend(&p, parts, r, budget - j, j, alpha, out)?;
        alpha.pop();
    }
    Ok(())
}

fn distinct_permutations(sorted: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(sorted.len());
    let mut used = vec![false; sorted.len()];
    fn go(s: &[u32], used: &mut [bool], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == s.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..s.len() {
            if used[i] || (i > 0 && s[i] == s[i - 1] && !used[i - 1]) {
                continue;
            }
            used[i] = true;
            cur.push(s[i]);
            go(s, used, cur, out);
            cur.pop();
            used[i] = false;
        }
    }
    go(sorted, &mut used, &mut cur, &mut out);
    out
}

/// `1/f` as a Laurent series, for `f` of valuation one with unit `f_1`.
pub fn reciprocal<R: Ring>(f: &Series<R>) -> Result<LaurentSeries<R>> {
    if f.valuation() != Some(1) {
        return Err(Error::Precondition(
            "expected a series of valuation exactly one".into(),
        ));
    }
    LaurentSeries::from_series(f, 0).try_inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat, Rational};
    use crate::series::one_minus_exp_neg;
    use proptest::prelude::*;

    type S = Series<Rational>;
    type L = LaurentSeries<Rational>;

    fn nil(cs: &[i64], d: usize) -> Nil<Rational> {
        Nil::truncated(0, cs.iter().map(|&c| int(c)).collect(), d as i64)
    }

    /// Coefficient of `n^j t^k`.
    fn at(l: &LaurentSeries<Nil<Rational>>, k: i64, j: i64) -> Rational {
        l.coeff(k).coeff(j)
    }

    #[test]
    fn identity_gives_the_geometric_tail() {
        let d = 3;
        let l = reciprocal_shifted(&S::x(8), d).unwrap();
        for j in 0..=d as i64 {
            assert_eq!(at(&l, -j - 1, j), int(-1));
        }
        assert_eq!(l.coeff(-2), nil(&[0, -1], d));
        assert_eq!(l.coeff(0), nil(&[], d));
    }

    #[test]
    fn euler_at_zero_shift() {
        // f = x/(1+x): 1/f(-t) = -(1 - t)/t = -1/t + 1.
        let f = S::new(vec![int(0), int(1), int(-1), int(1), int(-1), int(1)], 5);
        let l = reciprocal_shifted(&f, 0).unwrap();
        assert_eq!(at(&l, -1, 0), int(-1));
        assert_eq!(at(&l, 0, 0), int(1));
        assert_eq!(at(&l, 1, 0), int(0));
    }

    #[test]
    fn todd_at_zero_shift_matches_bernoulli() {
        // 1/(1 - e^{t}) = -1/t + 1/2 - t/12 + t^3/720 - ...
        let l = reciprocal_shifted(&one_minus_exp_neg::<Rational>(8), 0).unwrap();
        let want = [(-1, rat(-1, 1)), (0, rat(1, 2)), (1, rat(-1, 12)), (2, rat(0, 1)), (3, rat(1, 720))];
        for (k, c) in want {
            assert_eq!(at(&l, k, 0), c, "t^{k}");
        }
    }

    #[test]
    fn residue_examples() {
        let todd = one_minus_exp_neg::<Rational>(8);
        let h = reciprocal(&todd).unwrap();
        let hm = h.neg_arg();
        assert!(h.mul(&hm).mul(&hm).residue().unwrap().is_zero());

        let euler = S::new(vec![int(0), int(1), int(-1), int(1), int(-1), int(1), int(-1)], 6);
        let h = reciprocal(&euler).unwrap();
        let hm = h.neg_arg();
        assert_eq!(h.mul(&hm).mul(&hm).residue().unwrap(), int(-1));
    }

    #[test]
    fn both_routes_agree() {
        let f = S::new(vec![int(0), int(1), rat(1, 2), int(-3), rat(2, 7), int(1), int(0), int(5), int(1), int(2)], 9);
        let d = 3;
        let direct = reciprocal_shifted(&f, d).unwrap();
        let parts = taylor_parts(&reciprocal(&f).unwrap(), d);
        for k in -(d as i64) - 1..=direct.order().unwrap() {
            for j in 0..=d {
                assert_eq!(at(&direct, k, j as i64), parts[j].coeff(k), "n^{j} t^{k}");
            }
        }
    }

    #[test]
    fn multi_residue_matches_a_single_root() {
        let f = one_minus_exp_neg::<Rational>(12);
        let h = reciprocal(&f).unwrap();
        let parts = taylor_parts(&h, 4);
        let g = L::t_pow(-2);
        let res = multi_residue(&g, &parts, 1, 4).unwrap();
        for j in 0..=4usize {
            let want = g.mul(&parts[j]).residue().unwrap();
            assert_eq!(res.get(&vec![j as u32]).cloned().unwrap_or_else(Rational::zero), want);
        }
    }

    #[test]
    fn multi_residue_is_symmetric() {
        let f = S::new(vec![int(0), int(1), int(2), int(-1), int(3), int(1), int(1), int(2), int(0), int(1), int(1), int(1), int(1)], 12);
        let h = reciprocal(&f).unwrap();
        let parts = taylor_parts(&h, 3);
        let res = multi_residue(&h, &parts, 2, 3).unwrap();
        for (alpha, c) in &res {
            let swapped = vec![alpha[1], alpha[0]];
            assert_eq!(res.get(&swapped), Some(c));
            let direct = h.mul(&parts[alpha[0] as usize]).mul(&parts[alpha[1] as usize]);
            assert_eq!(&direct.residue().unwrap(), c);
        }
        assert!(!res.is_empty());
    }

    #[test]
    fn rejects_wrong_valuation() {
        assert!(reciprocal_shifted(&S::new(vec![int(0), int(0), int(1)], 4), 1).is_err());
        assert!(reciprocal_shifted(&S::one(4), 1).is_err());
    }

    fn arb_f() -> impl Strategy<Value = S> {
        proptest::collection::vec((-4i64..5, 1i64..4), 8).prop_map(|cs| {
            let mut v = vec![int(0), int(1)];
            v.extend(cs.into_iter().map(|(a, b)| rat(a, b)));
            S::new(v, 9)
        })
    }

    proptest! {
        #[test]
        fn reciprocal_times_shift_is_one(f in arb_f(), d in 0usize..4) {
            let l = reciprocal_shifted(&f, d).unwrap();
            let fs = shifted_argument(&f, d).unwrap();
            let p = nil_reduce(&l.mul(&fs), d);
            prop_assert!(p.order().unwrap() >= 0);
            prop_assert!(p.sub(&LaurentSeries::one()).is_zero());
        }
    }
}
