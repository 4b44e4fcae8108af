use super::bundle::{chern_parts, reduce_xi, sparse};
use super::{Class, Embedding, Root, VarietyModel};
use crate::error::{Error, Result};
use crate::ring::{int, sign, Rational};

/// `Y = Bl_Z X` as `φ*H*(X) ⊕ ⊕_{k<=r-2} j_*(H*(Z) ξ^k)`, where `j: E -> Y`
/// is the exceptional divisor `E = P(N)` and `ξ = c_1(O_{P(N)}(1)) = -E|_E`.
///
/// Products follow
/// * `φ*α · φ*α' = φ*(αα')`
/// * `φ*α · j_*B = j_*(i*α · B)`
/// * `j_*B · j_*B' = j_*(-ξ B B')`
/// * `j_*(β ξ^{r-1}) = φ*(i_*β) - j_*(β Σ_{j=1}^{r-1} c_j(N) ξ^{r-1-j})`
#[derive(Clone, Debug)]
pub struct BlowupModel {
    pub model: VarietyModel,
    pub embedding: Embedding,
    nx: usize,
}

/// A class of `Y` before normalization: a pulled-back part and a polynomial
/// in `ξ` over `Z` pushed forward from `E`.
struct Split {
    ambient: Class<Rational>,
    exceptional: Vec<Class<Rational>>,
}

impl BlowupModel {
    /// `φ*α`.
    pub fn pullback<R: crate::ring::Ring>(&self, a: &Class<R>) -> Class<R> {
        let mut coords = a.coords().to_vec();
        coords.resize(self.model.rank(), R::zero());
        Class::from_coords(coords)
    }

    /// The exceptional divisor `E = j_*(1)`.
    pub fn exceptional(&self) -> Class<Rational> {
        self.model.class("E").expect("named at construction")
    }

    /// `j_*(β ξ^k)` for a class `β` on `Z`.
    pub fn push_from_exceptional(&self, beta: &Class<Rational>, k: usize) -> Class<Rational> {
        let mut poly = vec![Class::zero(self.embedding.center.rank()); k + 1];
        poly[k] = beta.clone();
        let s = normalize(
            &self.embedding,
            Split {
                ambient: Class::zero(self.nx),
                exceptional: poly,
            },
        );
        assemble(&self.embedding, self.nx, &s)
    }
}

fn c_parts(e: &Embedding) -> Vec<Class<Rational>> {
    chern_parts(&e.center, &e.normal_chern(), e.codim)
}

/// Brings the exceptional part to `ξ`-degree at most `r - 2`.
fn normalize(e: &Embedding, mut s: Split) -> Split {
    let r = e.codim;
    let z = &e.center;
    let cs = c_parts(e);
    let mut poly = if s.exceptional.len() > r {
        reduce_xi(z, std::mem::take(&mut s.exceptional), &cs)
    } else {
        std::mem::take(&mut s.exceptional)
    };
    poly.resize(r, Class::zero(z.rank()));
    let beta = poly.pop().expect("r >= 1");
    if !beta.is_zero() {
        s.ambient = s.ambient.add(&e.push_class(&beta));
        for (j, cj) in cs.iter().enumerate().take(r).skip(1) {
            let t = z.mul(&beta, cj);
            poly[r - 1 - j] = poly[r - 1 - j].sub(&t);
        }
    }
    Split {
        ambient: s.ambient,
        exceptional: poly,
    }
}

fn assemble(e: &Embedding, nx: usize, s: &Split) -> Class<Rational> {
    let nz = e.center.rank();
    let mut coords = s.ambient.coords().to_vec();
    coords.resize(nx + nz * e.codim.saturating_sub(1), int(0));
    for (k, c) in s.exceptional.iter().enumerate() {
        for (b, q) in c.coords().iter().enumerate() {
            coords[nx + k * nz + b] = q.clone();
        }
    }
    Class::from_coords(coords)
}

fn split_basis(e: &Embedding, nx: usize, i: usize) -> Split {
    let nz = e.center.rank();
    if i < nx {
        Split {
            ambient: Class::basis(nx, i),
            exceptional: Vec::new(),
        }
    } else {
        let (k, b) = ((i - nx) / nz, (i - nx) % nz);
        let mut poly = vec![Class::zero(nz); k + 1];
        poly[k] = Class::basis(nz, b);
        Split {
            ambient: Class::zero(nx),
            exceptional: poly,
        }
    }
}

fn product(e: &Embedding, a: &Split, b: &Split) -> Split {
    let x = &e.ambient;
    let z = &e.center;
    let ambient = x.mul(&a.ambient, &b.ambient);
    let mut poly: Vec<Class<Rational>> = Vec::new();
    let mut add = |k: usize, c: Class<Rational>| {
        if poly.len() <= k {
            poly.resize(k + 1, Class::zero(z.rank()));
        }
        poly[k] = poly[k].add(&c);
    };
    let ra = e.restrict_class(&a.ambient);
    let rb = e.restrict_class(&b.ambient);
    for (k, c) in b.exceptional.iter().enumerate() {
        add(k, z.mul(&ra, c));
    }
    for (k, c) in a.exceptional.iter().enumerate() {
        add(k, z.mul(&rb, c));
    }
    for (k, c) in a.exceptional.iter().enumerate() {
        for (l, d) in b.exceptional.iter().enumerate() {
            add(k + l + 1, z.mul(c, d).neg());
        }
    }
    normalize(e, Split { ambient, exceptional: poly })
}

/// Builds the blow-up ring; its tangent bundle comes from
/// `c(T_Y) = φ*c(T_X) φ*c(Q)^{-1} (1 + E) c(φ*Q ⊗ O(-E))` when the
/// embedding carries `Q`.
pub fn blow_up(e: &Embedding) -> Result<BlowupModel> {
    let r = e.codim;
    if r == 0 {
        return Err(Error::Precondition("the center must have positive codimension".into()));
    }
    if e.normal_roots.len() != r {
        return Err(Error::DimensionMismatch(format!(
            "normal bundle of rank {} for codimension {r}",
            e.normal_roots.len()
        )));
    }
    let x = &e.ambient;
    let z = &e.center;
    let (nx, nz) = (x.rank(), z.rank());
    let n = nx + nz * (r - 1);

    let mut degrees = x.degrees().to_vec();
    let mut labels = x.labels().to_vec();
    for k in 0..r - 1 {
        for b in 0..nz {
            degrees.push(z.degrees()[b] + k + 1);
            let inner = match (z.labels()[b].as_str(), k) {
                ("1", 0) => String::new(),
                ("1", _) => super::power_label("xi", k),
                (l, 0) => l.to_string(),
                (l, _) => format!("{l}*{}", super::power_label("xi", k)),
            };
            labels.push(if inner.is_empty() { "E".into() } else { format!("j({inner})") });
        }
    }
    let mut top = x.top_values().to_vec();
    top.resize(n, int(0));

    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let p = product(e, &split_basis(e, nx, i), &split_basis(e, nx, j));
            let entry = sparse(&assemble(e, nx, &p));
            table[j][i] = entry.clone();
            table[i][j] = entry;
        }
    }

    let exceptional = if r == 1 {
        let mut c = e.push_class(&z.one::<Rational>()).coords().to_vec();
        c.resize(n, int(0));
        Class::from_coords(c)
    } else {
        Class::basis(n, nx)
    };

    let pull = |c: &Class<Rational>| {
        let mut coords = c.coords().to_vec();
        coords.resize(n, int(0));
        Class::from_coords(coords)
    };
    let tangent = match (x.tangent_roots(), &e.q_roots) {
        (Ok(roots), Some(qs)) => {
            let mut out: Vec<Root> = roots
                .iter()
                .map(|rt| Root {
                    class: pull(&rt.class),
                    mult: rt.mult,
                })
                .collect();
            // O(E) - O: the trivial root keeps the virtual rank at dim Y,
            // which Λ^p and genera with Q(0) ≠ 1 both see.
            out.push(Root {
                class: exceptional.clone(),
                mult: 1,
            });
            out.push(Root {
                class: Class::zero(n),
                mult: -1,
            });
            for q in qs {
                let q = pull(q);
                out.push(Root {
                    class: q.clone(),
                    mult: -1,
                });
                out.push(Root {
                    class: q.sub(&exceptional),
                    mult: 1,
                });
            }
            Some(out)
        }
        _ => None,
    };

    let name = format!("bl({}; {})", x.name(), z.name());
    let mut model = VarietyModel::from_parts(name, x.dim(), degrees, labels, table, top, tangent);
    for (nm, c) in x.named_classes() {
        model.name_class(nm, pull(c));
    }
    model.name_class("E", exceptional);
    Ok(BlowupModel {
        model,
        embedding: e.clone(),
        nx,
    })
}

/// `φ̄_* e^k` on `Z` for `e = E|_E`: zero for `k <= r - 2`, otherwise
/// `(-1)^k s_{k-r+1}(N)`.
pub fn exceptional_pushforward(e: &Embedding, k: usize) -> Class<Rational> {
    let r = e.codim;
    if k + 1 < r {
        return Class::zero(e.center.rank());
    }
    let s = e.segre();
    e.center.part(&s, k + 1 - r).scale(&sign(k as i64))
}

impl Embedding {
    /// A center of `X` disjoint from the center of `first`, viewed in
    /// `Bl(first)`. The caller asserts disjointness.
    pub fn lift_disjoint(&self, first: &BlowupModel) -> Result<Embedding> {
        if self.ambient.rank() != first.embedding.ambient.rank() {
            return Err(Error::DimensionMismatch(
                "the two centers live in different ambient models".into(),
            ));
        }
        let y = &first.model;
        let nz = self.center.rank();
        let restrict = (0..y.rank())
            .map(|i| {
                if i < first.nx {
                    self.restrict[i].clone()
                } else {
                    Class::zero(nz)
                }
            })
            .collect();
        let push = self.push.iter().map(|c| first.pullback(c)).collect();
        Ok(Embedding {
            ambient: y.clone(),
            center: self.center.clone(),
            codim: self.codim,
            restrict,
            push,
            normal_roots: self.normal_roots.clone(),
            q_roots: self
                .q_roots
                .as_ref()
                .map(|qs| qs.iter().map(|q| first.pullback(q)).collect()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::{linear_subspace, projective_bundle, projective_space};
    use proptest::prelude::*;

    #[test]
    fn point_in_plane() {
        let b = blow_up(&linear_subspace(0, 2).unwrap()).unwrap();
        let y = &b.model;
        let e = b.exceptional();
        assert_eq!(y.integrate(&y.mul(&e, &e)), int(-1));
        assert_eq!(y.euler_number().unwrap(), int(4));
        assert_eq!(y.chern_number(&[1, 1]).unwrap(), int(8));
        let h = y.class("h").unwrap();
        let c1 = h.scale(&int(3)).sub(&e);
        assert_eq!(y.chern_class(1).unwrap(), c1);
    }

    #[test]
    fn agrees_with_hirzebruch_surface() {
        let b = blow_up(&linear_subspace(0, 2).unwrap()).unwrap();
        let p1 = projective_space(1);
        let f1 = projective_bundle(&p1, &p1.class("h").unwrap(), &[1, 0]).unwrap().model;
        for ks in [vec![2], vec![1, 1]] {
            assert_eq!(b.model.chern_number(&ks).unwrap(), f1.chern_number(&ks).unwrap());
        }
    }

    #[test]
    fn line_in_space() {
        let emb = linear_subspace(1, 3).unwrap();
        let b = blow_up(&emb).unwrap();
        let y = &b.model;
        assert_eq!(y.euler_number().unwrap(), int(6));
        // K_Y = φ*K_X + (r-1)E
        let h = y.class("h").unwrap();
        let k = y.chern_class(1).unwrap().neg();
        assert_eq!(k, h.scale(&int(-4)).add(&b.exceptional()));
        assert_eq!(exceptional_pushforward(&emb, 0), Class::zero(2));
        assert_eq!(exceptional_pushforward(&emb, 1), emb.center.one::<Rational>().neg());
        let hz = emb.center.class("h").unwrap();
        assert_eq!(exceptional_pushforward(&emb, 2), hz.scale(&int(-2)));
    }

    #[test]
    fn pushforward_matches_self_intersections() {
        for (m, n) in [(0, 2), (0, 3), (1, 3), (1, 4)] {
            let emb = linear_subspace(m, n).unwrap();
            let b = blow_up(&emb).unwrap();
            let y = &b.model;
            let e = b.exceptional();
            for k in 0..n {
                // E^{k+1} = j_*(e^k)
                for a in 0..emb.ambient.rank() {
                    let alpha: Class<Rational> = emb.ambient.basis(a);
                    let lhs = y.integrate(&y.mul(&y.pow(&e, k + 1), &b.pullback(&alpha)));
                    let push = exceptional_pushforward(&emb, k);
                    let rhs = emb.center.integrate(&emb.center.mul(&push, &emb.restrict_class(&alpha)));
                    assert_eq!(lhs, rhs, "P{m} in P{n}, k={k}, a={a}");
                }
            }
        }
    }

    #[test]
    fn zero_section_blow_up() {
        let p1 = projective_space(1);
        let bundle = projective_bundle(&p1, &p1.class("h").unwrap(), &[1, 1, 0]).unwrap();
        let b = blow_up(bundle.zero_section.as_ref().unwrap()).unwrap();
        assert_eq!(b.model.euler_number().unwrap(), int(8));
    }

    #[test]
    fn disjoint_tower() {
        let first = blow_up(&linear_subspace(0, 3).unwrap()).unwrap();
        let line = linear_subspace(1, 3).unwrap().lift_disjoint(&first).unwrap();
        assert!(line.projection_formula_holds());
        let second = blow_up(&line).unwrap();
        // e(P³) - e(pt) + e(P²) - e(P¹) + e(P¹ × P¹)
        assert_eq!(second.model.euler_number().unwrap(), int(8));
    }

    #[test]
    fn divisor_blow_up_is_identity() {
        let emb = linear_subspace(1, 2).unwrap();
        let b = blow_up(&emb).unwrap();
        assert_eq!(b.model.rank(), 3);
        assert_eq!(b.model.euler_number().unwrap(), int(3));
        assert_eq!(b.exceptional(), b.model.class("h").unwrap());
    }

    fn models() -> Vec<BlowupModel> {
        [(0, 2), (0, 3), (1, 3)]
            .into_iter()
            .map(|(m, n)| blow_up(&linear_subspace(m, n).unwrap()).unwrap())
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn birational_integration(which in 0usize..3, c in -5i64..6) {
            let b = &models()[which];
            let x = &b.embedding.ambient;
            let pt = x.point_class().scale(&int(c));
            prop_assert_eq!(b.model.integrate(&b.pullback(&pt)), x.integrate(&pt));
        }

        #[test]
        fn blow_up_ring_is_commutative_and_associative(which in 0usize..3, i in 0usize..8, j in 0usize..8, k in 0usize..8) {
            let y = &models()[which].model;
            let n = y.rank();
            let (a, b, c): (Class<Rational>, Class<Rational>, Class<Rational>) = (y.basis(i % n), y.basis(j % n), y.basis(k % n));
            prop_assert_eq!(y.mul(&a, &b), y.mul(&b, &a));
            prop_assert_eq!(y.mul(&y.mul(&a, &b), &c), y.mul(&a, &y.mul(&b, &c)));
        }
    }
}
