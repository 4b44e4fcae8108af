//! Holomorphic Euler characteristics by Hirzebruch-Riemann-Roch, computed
//! from the virtual chern roots of `T_X`.

use crate::error::Result;
use crate::intersection::{Class, Root, VarietyModel};
use crate::ring::{binomial_rational, int, Rational};
use crate::series::{exp_linear, one_minus_exp_neg};

/// `∏ (x_i / (1 - e^{-x_i}))^{m_i}`.
pub fn todd_from_roots(x: &VarietyModel) -> Result<Class<Rational>> {
    let n = x.dim();
    let q = one_minus_exp_neg::<Rational>(n + 1).div_x_pow(1)?.invert_unit()?;
    let mut acc = x.one();
    for r in x.tangent_roots()? {
        let v = x.eval_series(&q, &r.class)?;
        acc = x.mul(&acc, &signed_power(x, &v, r.mult)?);
    }
    Ok(acc)
}

fn signed_power(x: &VarietyModel, v: &Class<Rational>, m: i64) -> Result<Class<Rational>> {
    if m >= 0 {
        Ok(x.pow(v, m as usize))
    } else {
        Ok(x.pow(&x.invert(v)?, (-m) as usize))
    }
}

/// `ch(Λ^p T*_X)` for `p = 0..=pmax`, from `Λ_t T* = ∏ (1 + t e^{-x_i})^{m_i}`.
pub fn lambda_cotangent(x: &VarietyModel, pmax: usize) -> Result<Vec<Class<Rational>>> {
    let n = x.dim();
    let mut acc: Vec<Class<Rational>> = vec![x.zero(); pmax + 1];
    acc[0] = x.one();
    for Root { class, mult } in x.tangent_roots()? {
        // (1 + t e^{-x})^m = Σ_k C(m, k) t^k e^{-kx}
        let factor: Vec<Class<Rational>> = (0..=pmax)
            .map(|k| {
                let e = x.eval_series(&exp_linear(&int(-(k as i64)), n), class)?;
                Ok(e.scale(&binomial_rational(&int(*mult), k as u64)))
            })
            .collect::<Result<_>>()?;
        let mut next = vec![x.zero(); pmax + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in factor.iter().enumerate().take(pmax + 1 - i) {
                next[i + j] = next[i + j].add(&x.mul(a, b));
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `χ(X, L ⊗ Ω^p) = ∫ td(T_X) ch(L) ch(Λ^p T*)` with `c_1(L) = line`.
pub fn chi_hrr(x: &VarietyModel, line: &Class<Rational>, p: usize) -> Result<Rational> {
    let td = todd_from_roots(x)?;
    let ch_l = x.eval_series(&exp_linear(&int(1), x.dim()), line)?;
    let lambda = lambda_cotangent(x, p)?;
    Ok(x.integrate(&x.mul(&x.mul(&td, &ch_l), &lambda[p])))
}

/// Coefficients of `χ_y(X) = Σ_p χ(X, K_X^{-k} ⊗ Ω^p) y^p`.
pub fn chi_y(x: &VarietyModel, k: i64) -> Result<Vec<Rational>> {
    let c1 = x.chern_class(1)?.scale(&int(k));
    (0..=x.dim()).map(|p| chi_hrr(x, &c1, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::{genus_eval, todd};
    use crate::intersection::{blow_up, linear_subspace, product, projective_space};

    #[test]
    fn line_bundles_on_the_plane() {
        let p2 = projective_space(2);
        let h = p2.class("h").unwrap();
        for l in 0..=4i64 {
            let expect = int((l + 1) * (l + 2) / 2);
            assert_eq!(chi_hrr(&p2, &h.scale(&int(l)), 0).unwrap(), expect);
        }
        // Monomial count for small ℓ.
        for l in 0..=2i64 {
            let count = (0..=l).map(|a| l - a + 1).sum::<i64>();
            assert_eq!(chi_hrr(&p2, &h.scale(&int(l)), 0).unwrap(), int(count));
        }
        assert_eq!(chi_hrr(&p2, &h, 1).unwrap(), int(0));
    }

    #[test]
    fn chi_y_of_small_spaces() {
        assert_eq!(chi_y(&projective_space(1), 0).unwrap(), vec![int(1), int(-1)]);
        assert_eq!(chi_y(&projective_space(2), 0).unwrap(), vec![int(1), int(-1), int(1)]);
        let q = product(&projective_space(1), &projective_space(1));
        assert_eq!(chi_y(&q, 0).unwrap(), vec![int(1), int(-2), int(1)]);
    }

    // Blow-ups of points and lines add one (p, p) class per exceptional
    // stratum and nothing off the diagonal.
    #[test]
    fn chi_y_of_blow_ups_from_hodge_numbers() {
        let cases = [
            (blow_up(&linear_subspace(0, 2).unwrap()).unwrap().model, vec![1, -2, 1]),
            (blow_up(&linear_subspace(0, 3).unwrap()).unwrap().model, vec![1, -2, 2, -1]),
            (blow_up(&linear_subspace(1, 3).unwrap()).unwrap().model, vec![1, -2, 2, -1]),
        ];
        for (x, hodge) in cases {
            let rank: i64 = x.tangent_roots().unwrap().iter().map(|r| r.mult).sum();
            assert_eq!(rank, x.dim() as i64, "{}", x.name());
            let expect: Vec<Rational> = hodge.into_iter().map(int).collect();
            assert_eq!(chi_y(&x, 0).unwrap(), expect, "{}", x.name());
        }
    }

    #[test]
    fn structure_sheaf_is_the_todd_genus() {
        let spaces = vec![
            projective_space(3),
            product(&projective_space(1), &projective_space(2)),
            blow_up(&linear_subspace(0, 2).unwrap()).unwrap().model,
            blow_up(&linear_subspace(1, 3).unwrap()).unwrap().model,
        ];
        for x in spaces {
            let zero = x.zero();
            assert_eq!(
                chi_hrr(&x, &zero, 0).unwrap(),
                genus_eval(&todd::<Rational>(x.dim() + 2), &x).unwrap()
            );
        }
    }
}
