//! `φ(X) - φ(Bl_Z X) = φ(P) - φ(Bl_Z P)` with `P = P_Z(N ⊕ 1)` and `Z`
//! embedded as its zero section: the difference only sees `Z` and `N`.

use crate::error::{Error, Result};
use crate::genus::{genus_class, Genus};
use crate::intersection::{blow_up, catalog, linear_subspace, Class, Embedding};
use crate::report::{ExactValue, VerificationReport};
use crate::ring::{Rational, Ring};

/// A center in `X` and the zero section of `P_Z(N ⊕ 1)`, with cycles
/// `D ⊂ X` and `D' ⊂ P` meeting the centers in the same cycle of `Z`.
#[derive(Clone, Debug)]
pub struct DeformationPair {
    pub name: String,
    pub original: Embedding,
    pub bundle: Embedding,
    pub cycles: (Class<Rational>, Class<Rational>),
}

/// `∫_D K(X) - ∫_{φ*D} K(Bl_Z X)`.
pub fn blow_up_difference<R: Ring>(g: &Genus<R>, e: &Embedding, d: &Class<Rational>) -> Result<R> {
    let bl = blow_up(e)?;
    let (x, y) = (&e.ambient, &bl.model);
    let kx = genus_class(g, x, &x.chern()?.lift(), x.dim())?;
    let ky = genus_class(g, y, &y.chern()?.lift(), y.dim())?;
    let d: Class<R> = d.lift();
    Ok(x.integrate(&x.mul(&d, &kx)).sub(&y.integrate(&y.mul(&bl.pullback(&d), &ky))))
}

pub fn verify_two_blow_ups<R: Ring + ExactValue>(g: &Genus<R>, p: &DeformationPair) -> VerificationReport {
    let check = format!("two-blow-ups/{}/{}", p.name, g.name());
    VerificationReport::timed(&check.clone(), || {
        let lhs = blow_up_difference(g, &p.original, &p.cycles.0)?;
        let rhs = blow_up_difference(g, &p.bundle, &p.cycles.1)?;
        Ok(VerificationReport::compare(check.clone(), &lhs, &rhs))
    })
}

/// The line in `P³` against the zero section of `P_{P¹}(O(1)² ⊕ O)`.
/// `hyperplane = false` uses the fundamental classes; `true` uses a
/// hyperplane of `P³` against a fiber of the bundle, both meeting the line
/// in a point.
pub fn line_in_space(hyperplane: bool) -> Result<DeformationPair> {
    let original = linear_subspace(1, 3)?;
    let bundle = catalog::embedding("bl-zero-section(P1;1,1)")?;
    if original.center.rank() != bundle.center.rank() {
        return Err(Error::DimensionMismatch("centers differ".into()));
    }
    let cycles = if hyperplane {
        (original.ambient.class("h")?, bundle.ambient.class("h")?)
    } else {
        (original.ambient.one(), bundle.ambient.one())
    };
    Ok(DeformationPair {
        name: if hyperplane { "line-p3/h".into() } else { "line-p3".into() },
        original,
        bundle,
        cycles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::{euler, todd, universal};
    use crate::ring::int;

    #[test]
    fn euler_and_todd() {
        let p = line_in_space(false).unwrap();
        let e = euler::<Rational>(6);
        assert_eq!(blow_up_difference(&e, &p.original, &p.cycles.0).unwrap(), int(-2));
        assert_eq!(blow_up_difference(&e, &p.bundle, &p.cycles.1).unwrap(), int(-2));
        assert!(verify_two_blow_ups(&e, &p).is_pass());
        let t = todd::<Rational>(6);
        assert_eq!(blow_up_difference(&t, &p.original, &p.cycles.0).unwrap(), int(0));
        assert!(verify_two_blow_ups(&t, &p).is_pass());
    }

    #[test]
    fn universal_genus() {
        for h in [false, true] {
            let p = line_in_space(h).unwrap();
            let r = verify_two_blow_ups(&universal(4), &p);
            assert!(r.is_pass(), "{}", r.summary());
        }
        // The differences themselves are not trivial.
        let p = line_in_space(false).unwrap();
        assert!(!blow_up_difference(&universal(4), &p.original, &p.cycles.0).unwrap().is_zero());
    }

    #[test]
    fn mismatched_cycles_fail() {
        let mut p = line_in_space(true).unwrap();
        p.cycles.1 = p.bundle.ambient.one();
        assert!(!verify_two_blow_ups(&euler::<Rational>(6), &p).is_pass());
    }
}
