//! Change of variables along blow-ups.
//!
//! A [`Stage`] is a smooth model with divisors `E_i` carrying discrepancies
//! `e_i` and a cycle `D`; its value is `∫_D ∏ A(E_i, e_i + 1) K(c(T))`.
//! Blowing up a smooth center of codimension `r` whose multiplicity in `E_i`
//! is `m_i` replaces each `E_i` by its strict transform `φ*E_i - m_i E_0` and
//! adds `E_0` with `e_0 = Σ e_i m_i + (r - 1)`. For the elliptic genus the
//! value does not change.

use crate::error::{Error, Result};
use crate::genus::{genus_class, todd, Genus};
use crate::intersection::{blow_up, linear_subspace, BlowupModel, Class, VarietyModel};
use crate::report::{ExactValue, VerificationReport};
use crate::ring::{int, Rational, Ring};
use crate::series::Series;
use crate::weierstrass::{SigmaFamily, ZRing};

/// A genus together with its corrections `A(t, r)`.
pub trait ChangeOfVariables {
    type R: Ring + ExactValue;

    fn genus(&self, order: usize) -> Result<Genus<Self::R>>;

    fn jacobian(&self, r: &Rational, order: usize) -> Result<Series<Self::R>>;

    /// How far a value is known, for coefficient rings that truncate.
    fn precision(_v: &Self::R) -> Option<String> {
        None
    }
}

impl ChangeOfVariables for SigmaFamily {
    type R = ZRing;

    fn genus(&self, order: usize) -> Result<Genus<ZRing>> {
        Genus::new("elliptic-sigma", self.f(order)?)
    }

    fn jacobian(&self, r: &Rational, order: usize) -> Result<Series<ZRing>> {
        self.jacobian_a(r, order)
    }

    fn precision(v: &ZRing) -> Option<String> {
        v.order().map(|o| format!("difference known through t^{o}, t = z"))
    }
}

/// The Todd genus, whose corrections are all `1`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ToddCorrections;

impl ChangeOfVariables for ToddCorrections {
    type R = Rational;

    fn genus(&self, order: usize) -> Result<Genus<Rational>> {
        Ok(todd(order))
    }

    fn jacobian(&self, _r: &Rational, order: usize) -> Result<Series<Rational>> {
        Ok(Series::one(order))
    }
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub space: VarietyModel,
    pub divisors: Vec<(Class<Rational>, Rational)>,
    pub cycle: Class<Rational>,
}

impl Stage {
    /// `X` with no divisors and `D = [X]`.
    pub fn plain(space: VarietyModel) -> Stage {
        let cycle = space.one();
        Stage { space, divisors: Vec::new(), cycle }
    }

    /// `∫_D ∏ A(E_i, e_i + 1) K(c(T))`.
    pub fn value<G: ChangeOfVariables>(&self, g: &G, order: usize) -> Result<G::R> {
        let x = &self.space;
        let order = order.max(x.dim() + 1);
        let genus = g.genus(order)?;
        let mut acc = x.mul(&self.cycle.lift(), &genus_class(&genus, x, &x.chern()?.lift(), x.dim())?);
        for (e, disc) in &self.divisors {
            let a = g.jacobian(&(disc + int(1)), order)?;
            acc = x.mul(&acc, &x.eval_series(&a, &e.lift())?);
        }
        Ok(x.integrate(&acc))
    }

    /// `e_0` for a center of codimension `r` with multiplicities `m_i`.
    pub fn new_discrepancy(&self, codim: usize, mults: &[i64]) -> Result<Rational> {
        if mults.len() != self.divisors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} multiplicities for {} divisors",
                mults.len(),
                self.divisors.len()
            )));
        }
        let mut e0 = int(codim as i64 - 1);
        for ((_, e), &m) in self.divisors.iter().zip(mults) {
            e0 += e * int(m);
        }
        if e0 == int(-1) {
            return Err(Error::Precondition("the new discrepancy is -1".into()));
        }
        Ok(e0)
    }

    pub fn blow_up(&self, bl: &BlowupModel, mults: &[i64]) -> Result<Stage> {
        if bl.embedding.ambient.rank() != self.space.rank() {
            return Err(Error::DimensionMismatch("the center lives on another model".into()));
        }
        let e0 = self.new_discrepancy(bl.embedding.codim, mults)?;
        let ex = bl.exceptional();
        let mut divisors: Vec<(Class<Rational>, Rational)> = self
            .divisors
            .iter()
            .zip(mults)
            .map(|((e, d), &m)| (bl.pullback(e).sub(&ex.scale(&int(m))), d.clone()))
            .collect();
        divisors.push((ex, e0));
        Ok(Stage {
            space: bl.model.clone(),
            divisors,
            cycle: bl.pullback(&self.cycle),
        })
    }

    /// `K - Σ e_i E_i`, which blowing up pulls back.
    pub fn log_canonical(&self) -> Result<Class<Rational>> {
        let x = &self.space;
        let mut k = x.chern_class(1)?.neg();
        for (e, d) in &self.divisors {
            k = k.sub(&e.scale(d));
        }
        Ok(k)
    }
}

fn compare_values<G: ChangeOfVariables>(check: &str, lhs: &G::R, rhs: &G::R) -> VerificationReport {
    let mut r = VerificationReport::compare(check, lhs, rhs);
    if let Some(p) = G::precision(&lhs.sub(rhs)) {
        r.lhs = format!("{} ({p})", r.lhs);
    }
    r
}

/// A single blow-up with the multiplicities of its center in each divisor.
#[derive(Clone, Debug)]
pub struct TransitionInstance {
    pub name: String,
    pub before: Stage,
    pub blowup: BlowupModel,
    pub mults: Vec<i64>,
}

/// `∫_D ∏ A(E'_i, e_i+1) K = ∫_{φ*D} ∏_{i≥0} A(E_i, e_i+1) K`.
pub fn verify_transition<G: ChangeOfVariables>(g: &G, inst: &TransitionInstance, order: usize) -> VerificationReport {
    let check = format!("transition/{}", inst.name);
    VerificationReport::timed(&check.clone(), || {
        let after = inst.before.blow_up(&inst.blowup, &inst.mults)?;
        let lhs = inst.before.value(g, order)?;
        let rhs = after.value(g, order)?;
        Ok(compare_values::<G>(&check, &lhs, &rhs))
    })
}

/// `Bl_pt(P²)` with `E' = ` a line through the point (`m = 1`) carrying
/// discrepancy `e1`; then `e_0 = e1 + 1`.
pub fn point_on_line_in_plane(e1: Rational) -> Result<TransitionInstance> {
    let bl = blow_up(&linear_subspace(0, 2)?)?;
    let mut before = Stage::plain(bl.embedding.ambient.clone());
    let h = before.space.class("h")?;
    before.divisors.push((h, e1.clone()));
    Ok(TransitionInstance {
        name: format!("bl-pt-p2-line/e1={}", crate::ring::rational_to_string(&e1)),
        before,
        blowup: bl,
        mults: vec![1],
    })
}

/// Case names accepted by [`transition_case`].
pub const TRANSITION_CASES: [&str; 4] = ["bl-pt-p2-line", "bl-pt-p2", "bl-pt-p3", "divisor-p2"];

/// `bl-pt-p2-line` (needs `e1`), `bl-pt-p2` and `bl-pt-p3` (no divisors),
/// `divisor-p2` (a line in `P²`, `r = 1`, with `e1` on it).
pub fn transition_case(name: &str, e1: &Rational) -> Result<TransitionInstance> {
    let plain = |m: usize, n: usize, label: &str| -> Result<TransitionInstance> {
        let bl = blow_up(&linear_subspace(m, n)?)?;
        Ok(TransitionInstance {
            name: label.to_string(),
            before: Stage::plain(bl.embedding.ambient.clone()),
            blowup: bl,
            mults: Vec::new(),
        })
    };
    match name.to_ascii_lowercase().as_str() {
        "bl-pt-p2-line" => point_on_line_in_plane(e1.clone()),
        "bl-pt-p2" => plain(0, 2, "bl-pt-p2"),
        "bl-pt-p3" => plain(0, 3, "bl-pt-p3"),
        "divisor-p2" => {
            let mut inst = plain(1, 2, "divisor-p2")?;
            let h = inst.before.space.class("h")?;
            inst.before.divisors.push((h, e1.clone()));
            inst.mults = vec![1];
            Ok(inst)
        }
        other => Err(Error::Parse(format!(
            "unknown transition case {other:?}; known: {}",
            TRANSITION_CASES.join(", ")
        ))),
    }
}

/// A composite of blow-ups; each step lists the multiplicities of its
/// center in the divisors present before it.
#[derive(Clone, Debug)]
pub struct Tower {
    pub name: String,
    pub base: Stage,
    pub steps: Vec<(BlowupModel, Vec<i64>)>,
}

impl Tower {
    pub fn stages(&self) -> Result<Vec<Stage>> {
        let mut out = vec![self.base.clone()];
        for (bl, mults) in &self.steps {
            let next = out.last().expect("nonempty").blow_up(bl, mults)?;
            out.push(next);
        }
        Ok(out)
    }
}

/// `pt-p3`: one point of `P³`. `pt+line-p3`: a point, then a disjoint line.
pub fn tower(name: &str) -> Result<Tower> {
    let pt = blow_up(&linear_subspace(0, 3)?)?;
    let base = Stage::plain(pt.embedding.ambient.clone());
    match name.to_ascii_lowercase().as_str() {
        "pt-p3" => Ok(Tower { name: "pt-p3".into(), base, steps: vec![(pt, vec![])] }),
        "pt+line-p3" => {
            // The standard point is [1:0:0:0]; the standard line is {x0 = x1 = 0}.
            let line = linear_subspace(1, 3)?.lift_disjoint(&pt)?;
            let second = blow_up(&line)?;
            Ok(Tower {
                name: "pt+line-p3".into(),
                base,
                steps: vec![(pt, vec![]), (second, vec![0])],
            })
        }
        other => Err(Error::Parse(format!("unknown tower {other:?}; known: pt-p3, pt+line-p3"))),
    }
}

/// The full change of variables for a tower, with the canonical bookkeeping
/// `K_Y - Σ e_i E_i = φ*(K_X - Σ e'_i E'_i)` checked at every step.
pub fn verify_change_of_variables<G: ChangeOfVariables>(g: &G, t: &Tower, order: usize) -> VerificationReport {
    let check = format!("change-of-variables/{}", t.name);
    VerificationReport::timed(&check.clone(), || {
        let stages = t.stages()?;
        let mut parts = Vec::new();
        for (i, ((bl, _), pair)) in t.steps.iter().zip(stages.windows(2)).enumerate() {
            let pulled = bl.pullback(&pair[0].log_canonical()?);
            let now = pair[1].log_canonical()?;
            let y = &pair[1].space;
            parts.push(if pulled == now {
                VerificationReport::pass(format!("canonical/{i}"), y.show(&now), y.show(&pulled))
            } else {
                VerificationReport::fail(format!("canonical/{i}"), y.show(&now), y.show(&pulled), "class".into())
            });
        }
        let last = stages.last().expect("nonempty");
        let discrepancies: Vec<String> = last
            .divisors
            .iter()
            .map(|(_, e)| crate::ring::rational_to_string(e))
            .collect();
        let lhs = t.base.value(g, order)?;
        let rhs = last.value(g, order)?;
        let mut value = compare_values::<G>("value", &lhs, &rhs);
        value.rhs = format!("{} (discrepancies {})", value.rhs, discrepancies.join(", "));
        parts.push(value);
        let mut r = VerificationReport::all(check.clone(), parts);
        if r.is_pass() {
            r.lhs = lhs.exact();
            r.rhs = format!("{} (discrepancies {})", rhs.exact(), discrepancies.join(", "));
        }
        Ok(r)
    })
}

/// A resolution `Y` of a singular variety with `K_Y = φ*K_X + Σ e_i E_i`.
#[derive(Clone, Debug)]
pub struct ResolutionData {
    pub name: String,
    pub y: VarietyModel,
    pub divisors: Vec<(Class<Rational>, Rational)>,
}

impl ResolutionData {
    pub fn stage(&self) -> Stage {
        Stage {
            space: self.y.clone(),
            divisors: self.divisors.clone(),
            cycle: self.y.one(),
        }
    }
}

/// `∫_Y ∏ A(E_i, e_i + 1) K(c(T_Y))`; fails unless every `e_i > -1`.
pub fn singular_genus<G: ChangeOfVariables>(g: &G, res: &ResolutionData, order: usize) -> Result<G::R> {
    if let Some((_, e)) = res.divisors.iter().find(|(_, e)| *e <= int(-1)) {
        return Err(Error::NotLogTerminal(crate::ring::rational_to_string(e)));
    }
    res.stage().value(g, order)
}

/// The values from two resolutions of the same variety agree.
pub fn verify_resolution_independence<G: ChangeOfVariables>(
    g: &G,
    first: &ResolutionData,
    second: &ResolutionData,
    order: usize,
) -> VerificationReport {
    let check = format!("singular-genus/{}~{}", first.name, second.name);
    VerificationReport::timed(&check.clone(), || {
        let a = singular_genus(g, first, order)?;
        let b = singular_genus(g, second, order)?;
        Ok(compare_values::<G>(&check, &a, &b))
    })
}

/// `P²` resolved by itself and by `Bl_pt(P²)` with `e_0 = 1`.
pub fn plane_resolutions() -> Result<(ResolutionData, ResolutionData)> {
    let bl = blow_up(&linear_subspace(0, 2)?)?;
    let identity = ResolutionData {
        name: "P2".into(),
        y: bl.embedding.ambient.clone(),
        divisors: Vec::new(),
    };
    let point = ResolutionData {
        name: "bl-pt-P2".into(),
        y: bl.model.clone(),
        divisors: vec![(bl.exceptional(), int(1))],
    };
    Ok((identity, point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::genus_eval;
    use crate::ring::rat;
    use proptest::prelude::*;

    fn sigma() -> SigmaFamily {
        SigmaFamily::generic(24)
    }

    #[test]
    fn point_on_a_line() {
        let inst = point_on_line_in_plane(rat(1, 2)).unwrap();
        let after = inst.before.blow_up(&inst.blowup, &inst.mults).unwrap();
        assert_eq!(after.divisors[1].1, rat(3, 2));
        let r = verify_transition(&sigma(), &inst, 8);
        assert!(r.is_pass(), "{}", r.summary());
    }

    #[test]
    fn other_transitions() {
        for name in ["bl-pt-p2", "divisor-p2"] {
            let r = verify_transition(&sigma(), &transition_case(name, &rat(1, 3)).unwrap(), 8);
            assert!(r.is_pass(), "{}", r.summary());
        }
        // A codimension-one center changes nothing.
        let inst = transition_case("divisor-p2", &rat(1, 3)).unwrap();
        assert_eq!(inst.blowup.model.rank(), inst.before.space.rank());
    }

    #[test]
    fn excluded_discrepancy() {
        let inst = point_on_line_in_plane(int(-2)).unwrap();
        assert!(inst.before.blow_up(&inst.blowup, &inst.mults).is_err());
    }

    #[test]
    fn wrong_discrepancy_breaks_the_transition() {
        let inst = point_on_line_in_plane(rat(1, 2)).unwrap();
        let mut after = inst.before.blow_up(&inst.blowup, &inst.mults).unwrap();
        after.divisors[1].1 = int(2);
        let g = sigma();
        assert_ne!(inst.before.value(&g, 8).unwrap(), after.value(&g, 8).unwrap());
    }

    #[test]
    fn towers() {
        for name in ["pt-p3", "pt+line-p3"] {
            let t = tower(name).unwrap();
            let r = verify_change_of_variables(&sigma(), &t, 8);
            assert!(r.is_pass(), "{}", r.summary());
            assert!(verify_change_of_variables(&ToddCorrections, &t, 8).is_pass());
        }
        let stages = tower("pt+line-p3").unwrap().stages().unwrap();
        let discs: Vec<Rational> = stages[2].divisors.iter().map(|(_, e)| e.clone()).collect();
        assert_eq!(discs, vec![int(2), int(1)]);
    }

    #[test]
    fn todd_tower_is_birational_invariance() {
        let stages = tower("pt+line-p3").unwrap().stages().unwrap();
        for s in &stages {
            assert_eq!(genus_eval(&todd::<Rational>(6), &s.space).unwrap(), int(1));
        }
    }

    #[test]
    fn singular_genus_values() {
        let (id, pt) = plane_resolutions().unwrap();
        let g = sigma();
        assert_eq!(
            singular_genus(&g, &id, 8).unwrap(),
            genus_eval(&g.genus(8).unwrap(), &id.y).unwrap()
        );
        assert!(verify_resolution_independence(&g, &id, &pt, 8).is_pass());
        let mut bad = pt.clone();
        bad.divisors[0].1 = int(-1);
        assert!(matches!(singular_genus(&g, &bad, 8), Err(Error::NotLogTerminal(_))));
        // A wrong discrepancy gives a different value.
        let mut off = pt;
        off.divisors[0].1 = int(2);
        assert!(!verify_resolution_independence(&g, &id, &off, 8).is_pass());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]

        /// `∫_X F(E') K = ∫_Y F(φ*E') A(E_0, 2) K` for cubic `F` on `Bl_pt(P²)`.
        #[test]
        fn polynomial_in_a_pulled_back_divisor(c in proptest::collection::vec(-5i64..=5, 4)) {
            let g = SigmaFamily::generic(16);
            let bl = blow_up(&linear_subspace(0, 2).unwrap()).unwrap();
            let (x, y) = (&bl.embedding.ambient, &bl.model);
            let genus = g.genus(6).unwrap();
            let f = Series::new(c.iter().map(|&q| ZRing::from_rational(&int(q))).collect(), 6);
            let h: Class<ZRing> = x.class("h").unwrap().lift();
            let lhs = x.integrate(&x.mul(
                &x.eval_series(&f, &h).unwrap(),
                &genus_class(&genus, x, &x.chern().unwrap().lift(), 2).unwrap(),
            ));
            let a = g.jacobian(&int(2), 6).unwrap();
            let ey = y.eval_series(&a, &bl.exceptional().lift()).unwrap();
            let fy = y.eval_series(&f, &bl.pullback(&h)).unwrap();
            let ky = genus_class(&genus, y, &y.chern().unwrap().lift(), 2).unwrap();
            let rhs = y.integrate(&y.mul(&y.mul(&fy, &ey), &ky));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
