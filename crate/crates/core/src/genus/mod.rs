//! Genera presented by a series `f`, with `Q(x) = x/f(x)`.
//!
//! The multiplicative sequence is evaluated through Newton power sums:
//! `K_Q(c) = Q(0)^n exp(Σ_j l_j p_j(c))` where `log(Q/Q(0)) = Σ l_j x^j` and
//! `p_j` are the power sums of the chern roots, recovered from the `c_i`.

mod hrr;
mod qproduct;
pub mod registry;

pub use hrr::{chi_hrr, chi_y, lambda_cotangent, todd_from_roots};
pub use qproduct::{
    chi_y_normalized, q_at_zero, q_product_fe, q_product_genus, q_product_series, QProductParams, QRing,
};

use crate::error::{Error, Result};
use crate::intersection::{product, projective_space, Class, VarietyModel};
use crate::report::{ExactValue, VerificationReport};
use crate::ring::{int, ParamPoly, Rational, Ring, Var};
use crate::series::{exp_linear, BiSeries, Series};

/// A genus over the coefficient ring `R`.
///
/// `f(0) = 0` and `f'(0)` must be a unit; `f'(0) = 1` is the usual
/// normalization, the χ_y genus is the one exception kept in the registry.
#[derive(Clone, Debug)]
pub struct Genus<R: Ring> {
    name: String,
    f: Series<R>,
}

impl<R: Ring> Genus<R> {
    pub fn new(name: impl Into<String>, f: Series<R>) -> Result<Self> {
        if !f.coeff(0).is_zero() {
            return Err(Error::Precondition("a genus series needs f(0) = 0".into()));
        }
        if f.order() < 1 || f.coeff(1).inverse().is_none() {
            return Err(Error::NotInvertible("f'(0) must be a unit".into()));
        }
        Ok(Genus { name: name.into(), f })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn f(&self) -> &Series<R> {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.f.order()
    }

    /// `Q(x) = x/f(x)` through `x^{order-1}`.
    pub fn q(&self) -> Result<Series<R>> {
        self.f.div_x_pow(1)?.invert_unit()
    }

    /// `(Q(0), log(Q/Q(0)))`.
    fn log_q(&self) -> Result<(R, Series<R>)> {
        let q = self.q()?;
        let q0 = q.coeff(0).clone();
        let inv = q0.inverse().expect("checked at construction");
        Ok((q0, q.scale_by(&inv).log()?))
    }

    /// The same genus with coefficients pushed through a ring map.
    pub fn map<S: Ring>(&self, name: impl Into<String>, h: impl Fn(&R) -> S) -> Result<Genus<S>> {
        Genus::new(name, self.f.map(h))
    }
}

pub fn todd<R: Ring>(order: usize) -> Genus<R> {
    Genus::new("todd", crate::series::one_minus_exp_neg(order)).expect("valid series")
}

/// `f = x/(1+x)`, so `Q = 1 + x` and the genus is the Euler number.
pub fn euler<R: Ring>(order: usize) -> Genus<R> {
    let geometric = Series::from_fn(order, |k| R::from_int(if k % 2 == 0 { 1 } else { -1 }));
    Genus::new("euler", geometric.mul_x_pow(1).truncate(order)).expect("valid series")
}

/// `f = x + Σ_{i=2}^{order} f_i x^i` with every `f_i` a free parameter.
pub fn universal(order: usize) -> Genus<ParamPoly> {
    let f = Series::from_fn(order, |i| match i {
        0 => ParamPoly::zero(),
        1 => ParamPoly::one(),
        _ => ParamPoly::of(Var::indexed("f", i)),
    });
    Genus::new("universal", f).expect("valid series")
}

/// `K_Q(c)` for a total chern class `c` of a rank `rank` bundle on `x`.
pub fn genus_class<R: Ring>(g: &Genus<R>, x: &VarietyModel, c: &Class<R>, rank: usize) -> Result<Class<R>> {
    let n = x.dim();
    if !x.constant(c).is_one() {
        return Err(Error::Precondition("a total chern class has constant term 1".into()));
    }
    if g.order() < n + 1 {
        return Err(Error::Precondition(format!(
            "genus series known through x^{} but a {n}-fold needs x^{}",
            g.order(),
            n + 1
        )));
    }
    let (q0, log_q) = g.log_q()?;
    let e: Vec<Class<R>> = (0..=n).map(|k| x.part(c, k)).collect();
    // p_k = Σ_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
    let mut p: Vec<Class<R>> = vec![x.zero(); n + 1];
    for k in 1..=n {
        let sk = if k % 2 == 1 { 1 } else { -1 };
        let mut pk = e[k].scale(&int(sk * k as i64));
        for i in 1..k {
            let t = x.mul(&e[i], &p[k - i]);
            pk = if i % 2 == 1 { pk.add(&t) } else { pk.sub(&t) };
        }
        p[k] = pk;
    }
    let mut s = x.zero::<R>();
    for (j, pj) in p.iter().enumerate().skip(1) {
        s = s.add(&pj.scale_by(log_q.coeff(j)));
    }
    let k = x.eval_series(&exp_linear(&R::one(), n), &s)?;
    Ok(k.scale_by(&q0.pow(rank as u32)))
}

/// `∫_X K_Q(c(T_X))`.
pub fn genus_eval<R: Ring>(g: &Genus<R>, x: &VarietyModel) -> Result<R> {
    let c = x.chern()?.lift::<R>();
    Ok(x.integrate(&genus_class(g, x, &c, x.dim())?))
}

/// `∫_X [D] · K_Q(c(T_X)) · ∏ f(u_j)`.
pub fn virtual_genus<R: Ring>(g: &Genus<R>, x: &VarietyModel, d: &Class<R>, us: &[Class<R>]) -> Result<R> {
    if d.len() != x.rank() || us.iter().any(|u| u.len() != x.rank()) {
        return Err(Error::DimensionMismatch(format!("classes do not live on {}", x.name())));
    }
    let degrees: Vec<usize> = (0..d.len())
        .filter(|&i| !d.coord(i).is_zero())
        .map(|i| x.degrees()[i])
        .collect();
    if degrees.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::DimensionMismatch("the cycle D is not homogeneous".into()));
    }
    let c = x.chern()?.lift::<R>();
    let mut acc = x.mul(d, &genus_class(g, x, &c, x.dim())?);
    for u in us {
        acc = x.mul(&acc, &x.eval_series(g.f(), u)?);
    }
    Ok(x.integrate(&acc))
}

/// `F(y1, y2) = f(g(y1) + g(y2))` with `g` the compositional inverse of `f`.
pub fn formal_group_law<R: Ring>(g: &Genus<R>, order: usize) -> Result<BiSeries<R>> {
    let f = g.f().truncate(order.min(g.order()));
    let inv = f.reversion()?;
    BiSeries::from_x(&inv).add(&BiSeries::from_y(&inv)).compose_into(&f)
}

/// Checks `[yⁿ] g'(y) = φ(Pⁿ)` for `n ≤ nmax` and
/// `[y1^i y2^j] F(y1,y2) g'(y1) g'(y2) = φ(H_ij)` for `i + j ≤ nmax`, where
/// `H_ij ⊂ P^i × P^j` is a hypersurface of bidegree `(1,1)`.
pub fn projective_identities<R: Ring + ExactValue>(g: &Genus<R>, nmax: usize) -> VerificationReport {
    let check = format!("projective-identities/{}", g.name());
    VerificationReport::timed(&check.clone(), || {
        if !g.f().coeff(1).is_one() {
            return Err(Error::Precondition("the identities assume f'(0) = 1".into()));
        }
        if g.order() < nmax + 1 {
            return Err(Error::Precondition(format!("need f through x^{}", nmax + 1)));
        }
        let f = g.f().truncate(nmax + 1);
        let gp = f.reversion()?.derivative();
        let mut parts = Vec::new();
        for n in 0..=nmax {
            let value = genus_eval(g, &projective_space(n))?;
            parts.push(VerificationReport::compare(format!("P{n}"), gp.coeff(n), &value));
        }
        let fgl = formal_group_law(g, nmax)?;
        let gen = fgl
            .mul(&BiSeries::from_x_to(&gp, nmax))
            .mul(&BiSeries::from_y_to(&gp, nmax));
        for i in 0..=nmax {
            for j in 0..=nmax - i {
                let value = hypersurface_genus(g, i, j)?;
                parts.push(VerificationReport::compare(format!("H{i},{j}"), gen.coeff(i, j), &value));
            }
        }
        Ok(VerificationReport::all(check.clone(), parts))
    })
}

/// `φ(H_ij)` as the virtual genus of `h1 + h2` on `P^i × P^j`.
pub fn hypersurface_genus<R: Ring>(g: &Genus<R>, i: usize, j: usize) -> Result<R> {
    let x = product(&projective_space(i), &projective_space(j));
    if i + j == 0 {
        // The hypersurface in a point is empty.
        return Ok(R::zero());
    }
    let zero = x.zero::<Rational>();
    let h1 = x.class("h1").unwrap_or_else(|_| zero.clone());
    let h2 = x.class("h2").unwrap_or(zero);
    virtual_genus(g, &x, &x.one(), &[h1.add(&h2).lift()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::{blow_up, linear_subspace, Root};
    use crate::ring::rat;
    use proptest::prelude::*;

    /// Oracle: `∏ Q(x_i)^{m_i}` over the virtual chern roots.
    fn root_product<R: Ring>(g: &Genus<R>, x: &VarietyModel, roots: &[Root]) -> Class<R> {
        let q = g.q().unwrap();
        let q0 = q.coeff(0).clone();
        let mut acc = x.one::<R>();
        for r in roots {
            let mut cls = r.class.lift::<R>();
            cls = x.part(&cls, 1);
            let nil = q.sub(&Series::constant(q0.clone(), q.order()));
            let val = x.eval_series(&nil, &cls).unwrap().add(&x.one::<R>().scale_by(&q0));
            let factor = if r.mult >= 0 {
                x.pow(&val, r.mult as usize)
            } else {
                x.pow(&x.invert(&val).unwrap(), (-r.mult) as usize)
            };
            acc = x.mul(&acc, &factor);
        }
        acc
    }

    #[test]
    fn multiplicative_sequence_examples() {
        let p3 = projective_space(3);
        let c = p3.chern().unwrap().clone();
        let trivial = Genus::new("x", Series::<Rational>::x(6)).unwrap();
        assert_eq!(genus_class(&trivial, &p3, &c, 3).unwrap(), p3.one());
        let e = euler::<Rational>(6);
        assert_eq!(genus_class(&e, &p3, &c, 3).unwrap(), c);

        // Todd of a line class: 1 + c1/2 + c1²/12.
        let h = p3.class("h").unwrap();
        let line = p3.one().add(&h);
        let td = genus_class(&todd::<Rational>(6), &p3, &line, 1).unwrap();
        let expect = p3
            .one()
            .add(&h.scale(&rat(1, 2)))
            .add(&p3.mul(&h, &h).scale(&rat(1, 12)));
        assert_eq!(td, expect);
    }

    #[test]
    fn newton_route_matches_roots() {
        let g = universal(5);
        let spaces = vec![
            projective_space(3),
            product(&projective_space(1), &projective_space(2)),
            blow_up(&linear_subspace(1, 3).unwrap()).unwrap().model,
            blow_up(&linear_subspace(0, 3).unwrap()).unwrap().model,
        ];
        for x in spaces {
            let c = x.chern().unwrap().lift::<ParamPoly>();
            let newton = genus_class(&g, &x, &c, x.dim()).unwrap();
            let roots = root_product(&g, &x, x.tangent_roots().unwrap());
            assert_eq!(newton, roots, "{}", x.name());
        }
    }

    #[test]
    fn genus_values() {
        for n in 0..=4 {
            assert_eq!(genus_eval(&todd::<Rational>(8), &projective_space(n)).unwrap(), int(1));
        }
        assert_eq!(genus_eval(&euler::<Rational>(8), &projective_space(2)).unwrap(), int(3));
        let p1 = projective_space(1);
        assert_eq!(
            genus_eval(&euler::<Rational>(8), &product(&p1, &p1)).unwrap(),
            int(4)
        );
        let p2 = projective_space(2);
        let h = p2.class("h").unwrap();
        let t = todd::<Rational>(8);
        assert_eq!(virtual_genus(&t, &p2, &p2.one(), std::slice::from_ref(&h)).unwrap(), int(1));
        assert_eq!(
            virtual_genus(&t, &p2, &p2.one(), &[]).unwrap(),
            genus_eval(&t, &p2).unwrap()
        );
        let mixed = p2.one().add(&h);
        assert!(virtual_genus(&t, &p2, &mixed, &[]).is_err());
    }

    #[test]
    fn formal_group_laws() {
        let additive = formal_group_law(&Genus::new("x", Series::<Rational>::x(6)).unwrap(), 6).unwrap();
        assert_eq!(additive, BiSeries::linear(&int(1), &int(1), 6));
        let mult = formal_group_law(&todd::<Rational>(6), 6).unwrap();
        let expect = BiSeries::linear(&int(1), &int(1), 6).sub(&BiSeries::monomial(int(1), 1, 1, 6));
        assert_eq!(mult, expect);
        // F(f(u), f(v)) = f(u + v).
        let g = universal(6);
        let f = g.f().clone();
        let fu = BiSeries::from_x(&f);
        let fv = BiSeries::from_y(&f);
        let law = formal_group_law(&g, 6).unwrap();
        let mut lhs = BiSeries::zero(6);
        for i in 0..=6 {
            for j in 0..=6 - i {
                let c = law.coeff(i, j);
                if !c.is_zero() {
                    let term = fu_pow(&fu, i).mul(&fu_pow(&fv, j)).map(|x| x.mul(c));
                    lhs = lhs.add(&term);
                }
            }
        }
        let rhs = BiSeries::linear(&int(1), &int(1), 6).compose_into(&f).unwrap();
        assert_eq!(lhs, rhs);
    }

    fn fu_pow(b: &BiSeries<ParamPoly>, k: usize) -> BiSeries<ParamPoly> {
        let mut acc = BiSeries::one(b.order());
        for _ in 0..k {
            acc = acc.mul(b);
        }
        acc
    }

    #[test]
    fn projective_identity_checks() {
        assert!(projective_identities(&todd::<Rational>(8), 6).is_pass());
        assert!(projective_identities(&euler::<Rational>(8), 6).is_pass());
        let r = projective_identities(&universal(5), 4);
        assert!(r.is_pass(), "{}", r.summary());
        // Euler: [yⁿ] g' = n + 1.
        let g = euler::<Rational>(8).f().reversion().unwrap().derivative();
        assert_eq!(*g.coeff(4), int(5));
    }

    #[test]
    fn multiplicativity() {
        let g = universal(6);
        let spaces = [projective_space(1), projective_space(2), product(&projective_space(1), &projective_space(1))];
        for a in &spaces {
            for b in &spaces {
                if a.dim() + b.dim() > 5 {
                    continue;
                }
                let lhs = genus_eval(&g, &product(a, b)).unwrap();
                let rhs = genus_eval(&g, a).unwrap().mul(&genus_eval(&g, b).unwrap());
                assert_eq!(lhs, rhs, "{} x {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn virtual_genus_expands_through_the_group_law() {
        // φ_D(u + v) = Σ a_rs φ_D(u^r v^s) on P²×P¹ with D a hyperplane pullback.
        let g = universal(5);
        let x = product(&projective_space(2), &projective_space(1));
        let u: Class<ParamPoly> = x.class("h1").unwrap().lift();
        let v: Class<ParamPoly> = x.class("h2").unwrap().lift();
        let d = u.clone();
        let lhs = virtual_genus(&g, &x, &d, &[u.add(&v)]).unwrap();
        let law = formal_group_law(&g, 4).unwrap();
        let mut rhs = ParamPoly::zero();
        for r in 0..=4 {
            for s in 0..=4 - r {
                let c = law.coeff(r, s);
                if c.is_zero() {
                    continue;
                }
                let us: Vec<Class<ParamPoly>> = std::iter::repeat_n(u.clone(), r)
                    .chain(std::iter::repeat_n(v.clone(), s))
                    .collect();
                rhs = rhs.add(&c.mul(&virtual_genus(&g, &x, &d, &us).unwrap()));
            }
        }
        assert_eq!(lhs, rhs);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn genus_class_is_natural(v in proptest::collection::vec(-5i64..=5, 4)) {
            let g = universal(5);
            let x = blow_up(&linear_subspace(1, 3).unwrap()).unwrap().model;
            let values: std::collections::BTreeMap<Var, Rational> =
                (2..=5).map(|i| (Var::indexed("f", i), int(v[i - 2]))).collect();
            let generic = genus_eval(&g, &x).unwrap().specialize(&values);
            let special = g.map("special", |c| c.specialize(&values)).unwrap();
            prop_assert_eq!(generic, genus_eval(&special, &x).unwrap());
        }
    }
}
