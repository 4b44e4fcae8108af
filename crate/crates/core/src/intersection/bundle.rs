use super::{power_label, Class, Embedding, Root, VarietyModel};
use crate::error::{Error, Result};
use crate::ring::{int, Rational, Ring};

/// `P_Z(V)` (lines in `V`) for `V = ⊕ O(d_i D)`, with `ξ = c_1(O(1))`.
#[derive(Clone, Debug)]
pub struct ProjectiveBundle {
    pub model: VarietyModel,
    /// Present when the last twist is `0`, i.e. `V = N ⊕ 1`: the section
    /// `P(1) ⊂ P(N ⊕ 1)`, with normal bundle `N`.
    pub zero_section: Option<Embedding>,
}

/// Reduces a polynomial in `ξ` with coefficients in `Z` modulo
/// `Σ_{j=0}^{m} c_j ξ^{m-j} = 0`; the result has length `m`.
pub(crate) fn reduce_xi(
    z: &VarietyModel,
    mut poly: Vec<Class<Rational>>,
    chern: &[Class<Rational>],
) -> Vec<Class<Rational>> {
    let m = chern.len() - 1;
    while poly.len() > m {
        let s = poly.len() - 1;
        let beta = poly.pop().expect("nonempty");
        if beta.is_zero() {
            continue;
        }
        for (j, cj) in chern.iter().enumerate().skip(1) {
            let t = z.mul(&beta, cj);
            poly[s - j] = poly[s - j].sub(&t);
        }
    }
    poly.resize(m, Class::zero(z.rank()));
    poly
}

/// Graded pieces `c_0..c_m` of a total chern class.
pub(crate) fn chern_parts(z: &VarietyModel, c: &Class<Rational>, m: usize) -> Vec<Class<Rational>> {
    (0..=m).map(|j| z.part(c, j)).collect()
}

/// `P_Z(⊕ O(d_i D))` for a divisor class `D` on `Z`.
///
/// The ring is `H*(Z)[ξ]/(Σ c_j(V) ξ^{m-j})` with basis `p*b · ξ^k`,
/// `k < m`; `∫ p*b ξ^{m-1} = ∫_Z b`. The relative tangent bundle is
/// `p*V ⊗ O(1) - O`.
pub fn projective_bundle(z: &VarietyModel, divisor: &Class<Rational>, twists: &[i64]) -> Result<ProjectiveBundle> {
    let m = twists.len();
    if m == 0 {
        return Err(Error::Precondition("a projective bundle needs a nonzero rank".into()));
    }
    let nz = z.rank();
    let summands: Vec<Class<Rational>> = twists.iter().map(|&d| divisor.scale(&int(d))).collect();
    let cv = z.total_chern(
        &summands
            .iter()
            .map(|c| Root {
                class: c.clone(),
                mult: 1,
            })
            .collect::<Vec<_>>(),
    );
    let cparts = chern_parts(z, &cv, m);

    let n = nz * m;
    let idx = |b: usize, k: usize| k * nz + b;
    let mut degrees = vec![0; n];
    let mut labels = vec![String::new(); n];
    let mut top = vec![int(0); n];
    for k in 0..m {
        for b in 0..nz {
            degrees[idx(b, k)] = z.degrees()[b] + k;
            let xi = power_label("xi", k);
            labels[idx(b, k)] = match (z.labels()[b].as_str(), xi.as_str()) {
                ("1", x) => x.to_string(),
                (l, "1") => l.to_string(),
                (l, x) => format!("{l}*{x}"),
            };
            if k == m - 1 {
                top[idx(b, k)] = z.top_values()[b].clone();
            }
        }
    }

    let to_class = |poly: &[Class<Rational>]| {
        let mut out = Class::zero(n);
        for (k, c) in poly.iter().enumerate() {
            for (b, q) in c.coords().iter().enumerate() {
                out.coords[idx(b, k)] = q.clone();
            }
        }
        out
    };

    let mut table = vec![vec![Vec::new(); n]; n];
    for k in 0..m {
        for b in 0..nz {
            for l in 0..m {
                for b2 in 0..nz {
                    let zz = z.mul(&z.basis::<Rational>(b), &z.basis(b2));
                    let mut poly = vec![Class::zero(nz); k + l + 1];
                    poly[k + l] = zz;
                    let red = reduce_xi(z, poly, &cparts);
                    let c = to_class(&red);
                    table[idx(b, k)][idx(b2, l)] = sparse(&c);
                }
            }
        }
    }

    let pull = |c: &Class<Rational>| {
        let mut out = Class::zero(n);
        for (b, q) in c.coords().iter().enumerate() {
            out.coords[idx(b, 0)] = q.clone();
        }
        out
    };
    let xi: Class<Rational> = if m >= 2 { Class::basis(n, idx(0, 1)) } else { Class::zero(n) };
    let tangent = z.tangent.as_ref().map(|roots| {
        let mut out: Vec<Root> = roots
            .iter()
            .map(|r| Root {
                class: pull(&r.class),
                mult: r.mult,
            })
            .collect();
        for s in &summands {
            out.push(Root {
                class: xi.add(&pull(s)),
                mult: 1,
            });
        }
        out.push(Root {
            class: Class::zero(n),
            mult: -1,
        });
        out
    });
    let name = format!(
        "proj-bundle({};{})",
        z.name(),
        twists.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    );
    let mut model = VarietyModel::from_parts(name, z.dim() + m - 1, degrees, labels, table, top, tangent);
    for (nm, c) in z.named_classes() {
        model.name_class(nm, pull(c));
    }
    if m >= 2 {
        model.name_class("xi", xi.clone());
    }

    let zero_section = if m >= 2 && twists[m - 1] == 0 {
        let normal = &summands[..m - 1];
        let restrict = (0..n)
            .map(|i| {
                let (k, b) = (i / nz, i % nz);
                if k == 0 {
                    Class::basis(nz, b)
                } else {
                    Class::zero(nz)
                }
            })
            .collect();
        let q_roots: Vec<Class<Rational>> = normal.iter().map(|s| xi.add(&pull(s))).collect();
        let mut fundamental = model.one::<Rational>();
        for q in &q_roots {
            fundamental = model.mul(&fundamental, q);
        }
        let push = (0..nz)
            .map(|b| model.mul(&pull(&z.basis(b)), &fundamental))
            .collect();
        Some(Embedding {
            ambient: model.clone(),
            center: z.clone(),
            codim: m - 1,
            restrict,
            push,
            normal_roots: normal.to_vec(),
            q_roots: Some(q_roots),
        })
    } else {
        None
    };

    Ok(ProjectiveBundle { model, zero_section })
}

pub(crate) fn sparse(c: &Class<Rational>) -> Vec<(usize, Rational)> {
    c.coords()
        .iter()
        .enumerate()
        .filter(|(_, q)| !Ring::is_zero(*q))
        .map(|(i, q)| (i, q.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::projective_space;

    #[test]
    fn point_base_is_projective_space() {
        let pt = projective_space(0);
        let b = projective_bundle(&pt, &Class::zero(1), &[0, 0]).unwrap();
        assert_eq!(b.model.euler_number().unwrap(), int(2));
        assert_eq!(b.model.chern_number(&[1]).unwrap(), projective_space(1).chern_number(&[1]).unwrap());
    }

    #[test]
    fn segre_sign() {
        let p1 = projective_space(1);
        let h = p1.class("h").unwrap();
        let b = projective_bundle(&p1, &h, &[1, 1]).unwrap();
        let xi = b.model.class("xi").unwrap();
        assert_eq!(b.model.integrate(&b.model.pow(&xi, 2)), int(-2));
    }

    #[test]
    fn hirzebruch_surface() {
        let p1 = projective_space(1);
        let h = p1.class("h").unwrap();
        let b = projective_bundle(&p1, &h, &[1, 0]).unwrap();
        assert_eq!(b.model.euler_number().unwrap(), int(4));
        assert_eq!(b.model.chern_number(&[1, 1]).unwrap(), int(8));
        let s = b.zero_section.unwrap();
        assert!(s.projection_formula_holds());
        // The section P(1) has self-intersection c_1(N) = 1.
        let sec = s.push_class(&s.center.one::<Rational>());
        assert_eq!(b.model.integrate(&b.model.mul(&sec, &sec)), int(1));
    }

    #[test]
    fn bundle_over_line_for_point_line_comparison() {
        let p1 = projective_space(1);
        let h = p1.class("h").unwrap();
        let b = projective_bundle(&p1, &h, &[1, 1, 0]).unwrap();
        assert_eq!(b.model.euler_number().unwrap(), int(6));
        assert!(b.zero_section.unwrap().projection_formula_holds());
    }
}
