//! Finite models of Chow rings with a tangent-bundle presentation.
//!
//! A [`VarietyModel`] is a graded ℚ-algebra with an additive basis,
//! structure constants, and a degree functional on the top piece. Classes are
//! coordinate vectors over any coefficient [`Ring`], so genus computations
//! with symbolic parameters run on the same tables.
//!
//! The tangent bundle is carried as a list of virtual chern roots
//! `(x_i, m_i)` meaning `T = Σ m_i L_i` in K-theory with `c_1(L_i) = x_i`.
//! Chern classes and Chern characters only depend on this class, so the
//! presentation serves both `c(T)` and Riemann-Roch.

mod blowup;
mod bundle;
pub mod catalog;

pub use blowup::{blow_up, exceptional_pushforward, BlowupModel};
pub use bundle::{projective_bundle, ProjectiveBundle};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{int, Rational, Ring};
use crate::series::Series;

/// Coordinates of a cohomology class in a model's basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Class<R: Ring> {
    coords: Vec<R>,
}

impl<R: Ring> Class<R> {
    pub fn from_coords(coords: Vec<R>) -> Self {
        Class { coords }
    }

    pub fn zero(n: usize) -> Self {
        Class {
            coords: vec![R::zero(); n],
        }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut c = Self::zero(n);
        c.coords[i] = R::one();
        c
    }

    pub fn coords(&self) -> &[R] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &R {
        &self.coords[i]
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(R::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Class {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Class {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|c| c.scale(q))
    }

    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn add_scaled(&mut self, rhs: &Self, c: &R) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            if !b.is_zero() {
                a.add_mul(b, c);
            }
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Class<S> {
        Class {
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

impl Class<Rational> {
    /// Coefficients moved into another ring.
    pub fn lift<S: Ring>(&self) -> Class<S> {
        self.map(S::from_rational)
    }
}

impl<R: Ring> fmt::Debug for Class<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// A virtual chern root: `mult` copies of a line bundle with first chern
/// class `class` (degree one or zero).
#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub class: Class<Rational>,
    pub mult: i64,
}

#[derive(Clone, Debug)]
pub struct VarietyModel {
    name: String,
    dim: usize,
    degrees: Vec<usize>,
    labels: Vec<String>,
    /// `table[i][j]` is the product of basis elements `i` and `j`.
    table: Vec<Vec<Vec<(usize, Rational)>>>,
    /// Degree of each basis element; nonzero only in top degree.
    top: Vec<Rational>,
    tangent: Option<Vec<Root>>,
    chern: Option<Class<Rational>>,
    named: BTreeMap<String, Class<Rational>>,
}

impl VarietyModel {
    /// Assembles a model from structure constants. `tangent` may be absent
    /// when no bundle `Q` was available to a blow-up.
    pub fn from_parts(
        name: impl Into<String>,
        dim: usize,
        degrees: Vec<usize>,
        labels: Vec<String>,
        table: Vec<Vec<Vec<(usize, Rational)>>>,
        top: Vec<Rational>,
        tangent: Option<Vec<Root>>,
    ) -> Self {
        let mut m = VarietyModel {
            name: name.into(),
            dim,
            degrees,
            labels,
            table,
            top,
            tangent: None,
            chern: None,
            named: BTreeMap::new(),
        };
        if let Some(roots) = tangent {
            m.set_tangent(roots);
        }
        m
    }

    pub(crate) fn set_tangent(&mut self, roots: Vec<Root>) {
        let c = self.total_chern(&roots);
        self.tangent = Some(roots);
        self.chern = Some(c);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn top_values(&self) -> &[Rational] {
        &self.top
    }

    pub fn table(&self) -> &[Vec<Vec<(usize, Rational)>>] {
        &self.table
    }

    pub fn name_class(&mut self, name: &str, c: Class<Rational>) {
        self.named.insert(name.to_string(), c);
    }

    /// A named class such as `h`, `h1`, `E` or `xi`.
    pub fn class(&self, name: &str) -> Result<Class<Rational>> {
        self.named
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("{} has no class named {name}", self.name)))
    }

    pub fn named_classes(&self) -> &BTreeMap<String, Class<Rational>> {
        &self.named
    }

    pub fn zero<R: Ring>(&self) -> Class<R> {
        Class::zero(self.rank())
    }

    /// The unit is always basis element 0.
    pub fn one<R: Ring>(&self) -> Class<R> {
        Class::basis(self.rank(), 0)
    }

    pub fn basis<R: Ring>(&self, i: usize) -> Class<R> {
        Class::basis(self.rank(), i)
    }

    /// Class of a point: the top-degree element of integral one.
    pub fn point_class(&self) -> Class<Rational> {
        let mut c = self.zero();
        let (i, v) = self
            .top
            .iter()
            .enumerate()
            .find(|(_, v)| !Ring::is_zero(*v))
            .expect("nonzero top degree");
        c.coords[i] = Ring::inverse(v).expect("nonzero rational");
        c
    }

    pub fn mul<R: Ring>(&self, a: &Class<R>, b: &Class<R>) -> Class<R> {
        let mut out = self.zero::<R>();
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() || self.degrees[i] + self.degrees[j] > self.dim {
                    continue;
                }
                let xy = x.mul(y);
                for (k, q) in &self.table[i][j] {
                    out.coords[*k].add_assign(&xy.scale(q));
                }
            }
        }
        out
    }

    pub fn pow<R: Ring>(&self, a: &Class<R>, e: usize) -> Class<R> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn integrate<R: Ring>(&self, a: &Class<R>) -> R {
        let mut acc = R::zero();
        for (c, t) in a.coords.iter().zip(&self.top) {
            if !Ring::is_zero(t) && !c.is_zero() {
                acc.add_assign(&c.scale(t));
            }
        }
        acc
    }

    /// Component of degree `k`.
    pub fn part<R: Ring>(&self, a: &Class<R>, k: usize) -> Class<R> {
        Class {
            coords: a
                .coords
                .iter()
                .zip(&self.degrees)
                .map(|(c, &d)| if d == k { c.clone() } else { R::zero() })
                .collect(),
        }
    }

    /// Constant term (coefficient of the unit).
    pub fn constant<R: Ring>(&self, a: &Class<R>) -> R {
        a.coords[0].clone()
    }

    /// `s(x) = Σ s_k x^k` for a class `x` of positive degree.
    pub fn eval_series<R: Ring>(&self, s: &Series<R>, x: &Class<R>) -> Result<Class<R>> {
        if !x.coords[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.dim.min(s.order());
        let mut acc = self.one::<R>().scale_by(s.coeff(n));
        for k in (0..n).rev() {
            acc = self.mul(&acc, x);
            acc.coords[0].add_assign(s.coeff(k));
        }
        Ok(acc)
    }

    /// Inverse of a class with invertible constant term.
    pub fn invert<R: Ring>(&self, a: &Class<R>) -> Result<Class<R>> {
        let c0 = a.coords[0]
            .inverse()
            .ok_or_else(|| Error::NotInvertible("class with non-unit constant term".into()))?;
        let mut nil = a.scale_by(&c0);
        nil.coords[0] = R::zero();
        // 1/(1 + u) = Σ (-u)^k
        let geometric = Series::from_fn(self.dim, |k| R::from_rational(&crate::ring::sign(k as i64)));
        Ok(self.eval_series(&geometric, &nil)?.scale_by(&c0))
    }

    /// `∏ (1 + x_i)^{m_i}`.
    pub fn total_chern(&self, roots: &[Root]) -> Class<Rational> {
        let mut acc = self.one::<Rational>();
        for r in roots {
            let one_plus = self.one::<Rational>().add(&r.class);
            let factor = if r.mult >= 0 {
                self.pow(&one_plus, r.mult as usize)
            } else {
                let inv = self.invert(&one_plus).expect("unit constant term");
                self.pow(&inv, (-r.mult) as usize)
            };
            acc = self.mul(&acc, &factor);
        }
        acc
    }

    pub fn tangent_roots(&self) -> Result<&[Root]> {
        self.tangent
            .as_deref()
            .ok_or_else(|| Error::MissingTangentData(format!("{} has no tangent presentation", self.name)))
    }

    /// `c(T)`.
    pub fn chern(&self) -> Result<&Class<Rational>> {
        self.chern
            .as_ref()
            .ok_or_else(|| Error::MissingTangentData(format!("{} has no tangent presentation", self.name)))
    }

    /// `c_k(T)`.
    pub fn chern_class(&self, k: usize) -> Result<Class<Rational>> {
        Ok(self.part(self.chern()?, k))
    }

    /// Top chern number, the topological Euler characteristic.
    pub fn euler_number(&self) -> Result<Rational> {
        Ok(self.integrate(&self.chern_class(self.dim)?))
    }

    /// `∫ c_1²` and friends: `∫ ∏ c_{k_i}` for `Σ k_i = dim`.
    pub fn chern_number(&self, ks: &[usize]) -> Result<Rational> {
        if ks.iter().sum::<usize>() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "chern number of degree {} on a {}-fold",
                ks.iter().sum::<usize>(),
                self.dim
            )));
        }
        let mut acc = self.one::<Rational>();
        for &k in ks {
            acc = self.mul(&acc, &self.chern_class(k)?);
        }
        Ok(self.integrate(&acc))
    }

    /// Human-readable class, e.g. `3*h + 3*h^2`.
    pub fn show<R: Ring>(&self, a: &Class<R>) -> String {
        let parts: Vec<String> = a
            .coords
            .iter()
            .zip(&self.labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                let cs = c.to_string();
                let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                if l == "1" {
                    cs
                } else if cs == "1" {
                    l.clone()
                } else {
                    format!("{cs}*{l}")
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// `Pⁿ`: `ℚ[h]/(h^{n+1})`, `c(T) = (1+h)^{n+1}`, `∫hⁿ = 1`.
pub fn projective_space(n: usize) -> VarietyModel {
    let degrees: Vec<usize> = (0..=n).collect();
    let labels = (0..=n).map(|k| power_label("h", k)).collect();
    let table = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| if i + j <= n { vec![(i + j, int(1))] } else { Vec::new() })
                .collect()
        })
        .collect();
    let mut top = vec![int(0); n + 1];
    top[n] = int(1);
    let mut m = VarietyModel::from_parts(format!("P{n}"), n, degrees, labels, table, top, None);
    let roots = if n == 0 {
        Vec::new()
    } else {
        vec![
            Root {
                class: Class::basis(n + 1, 1),
                mult: n as i64 + 1,
            },
            Root {
                class: Class::zero(n + 1),
                mult: -1,
            },
        ]
    };
    m.set_tangent(roots);
    if n >= 1 {
        m.name_class("h", Class::basis(n + 1, 1));
    }
    m
}

pub(crate) fn power_label(v: &str, k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => v.into(),
        _ => format!("{v}^{k}"),
    }
}

/// `X₁ × X₂` with the tensor basis; classes of the factors are pulled back
/// and named with suffixes `1` and `2` (`h1`, `h2`).
pub fn product(x1: &VarietyModel, x2: &VarietyModel) -> VarietyModel {
    let (n1, n2) = (x1.rank(), x2.rank());
    let idx = |i: usize, j: usize| i * n2 + j;
    let mut degrees = Vec::with_capacity(n1 * n2);
    let mut labels = Vec::with_capacity(n1 * n2);
    let mut top = Vec::with_capacity(n1 * n2);
    for i in 0..n1 {
        for j in 0..n2 {
            degrees.push(x1.degrees[i] + x2.degrees[j]);
            let (l1, l2) = (suffix(&x1.labels[i], '1'), suffix(&x2.labels[j], '2'));
            labels.push(match (l1.as_str(), l2.as_str()) {
                ("1", "1") => "1".into(),
                ("1", b) => b.into(),
                (a, "1") => a.into(),
                (a, b) => format!("{a}*{b}"),
            });
            top.push(&x1.top[i] * &x2.top[j]);
        }
    }
    let mut table = vec![vec![Vec::new(); n1 * n2]; n1 * n2];
    for i in 0..n1 {
        for j in 0..n2 {
            for k in 0..n1 {
                for l in 0..n2 {
                    let mut entry = Vec::new();
                    for (a, p) in &x1.table[i][k] {
                        for (b, q) in &x2.table[j][l] {
                            entry.push((idx(*a, *b), p * q));
                        }
                    }
                    table[idx(i, j)][idx(k, l)] = entry;
                }
            }
        }
    }
    let pull1 = |c: &Class<Rational>| {
        let mut out = Class::zero(n1 * n2);
        for (i, q) in c.coords.iter().enumerate() {
            out.coords[idx(i, 0)] = q.clone();
        }
        out
    };
    let pull2 = |c: &Class<Rational>| {
        let mut out = Class::zero(n1 * n2);
        for (j, q) in c.coords.iter().enumerate() {
            out.coords[idx(0, j)] = q.clone();
        }
        out
    };
    let tangent = match (&x1.tangent, &x2.tangent) {
        (Some(t1), Some(t2)) => Some(
            t1.iter()
                .map(|r| Root {
                    class: pull1(&r.class),
                    mult: r.mult,
                })
                .chain(t2.iter().map(|r| Root {
                    class: pull2(&r.class),
                    mult: r.mult,
                }))
                .collect(),
        ),
        _ => None,
    };
    let mut m = VarietyModel::from_parts(
        format!("{}x{}", x1.name, x2.name),
        x1.dim + x2.dim,
        degrees,
        labels,
        table,
        top,
        tangent,
    );
    for (name, c) in &x1.named {
        m.name_class(&format!("{name}1"), pull1(c));
    }
    for (name, c) in &x2.named {
        m.name_class(&format!("{name}2"), pull2(c));
    }
    m
}

fn suffix(label: &str, s: char) -> String {
    if label == "1" {
        return label.into();
    }
    label
        .split('*')
        .map(|f| match f.split_once('^') {
            Some((v, e)) => format!("{v}{s}^{e}"),
            None => format!("{f}{s}"),
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// A smooth center `i: Z -> X` of codimension `r` with its normal bundle
/// split as `N = ⊕ O(n_i)`, and optionally a split bundle `Q` on `X` with
/// `i*Q = N` (needed for the tangent bundle of the blow-up).
#[derive(Clone, Debug)]
pub struct Embedding {
    pub ambient: VarietyModel,
    pub center: VarietyModel,
    pub codim: usize,
    /// `i*` of each ambient basis element.
    pub restrict: Vec<Class<Rational>>,
    /// `i_*` of each center basis element.
    pub push: Vec<Class<Rational>>,
    /// First chern classes of the summands of `N`, classes on `Z`.
    pub normal_roots: Vec<Class<Rational>>,
    /// First chern classes of the summands of `Q`, classes on `X`.
    pub q_roots: Option<Vec<Class<Rational>>>,
}

impl Embedding {
    pub fn restrict_class<R: Ring>(&self, a: &Class<R>) -> Class<R> {
        apply_linear(&self.restrict, a, self.center.rank())
    }

    pub fn push_class<R: Ring>(&self, b: &Class<R>) -> Class<R> {
        apply_linear(&self.push, b, self.ambient.rank())
    }

    /// `c(N)`.
    pub fn normal_chern(&self) -> Class<Rational> {
        let roots: Vec<Root> = self
            .normal_roots
            .iter()
            .map(|c| Root {
                class: c.clone(),
                mult: 1,
            })
            .collect();
        self.center.total_chern(&roots)
    }

    /// `s(N) = c(N)^{-1}`.
    pub fn segre(&self) -> Class<Rational> {
        self.center.invert(&self.normal_chern()).expect("unit constant term")
    }

    /// Checks `i_*(i*α · β) = α · i_*β` on all basis pairs.
    pub fn projection_formula_holds(&self) -> bool {
        (0..self.ambient.rank()).all(|a| {
            (0..self.center.rank()).all(|b| {
                let alpha: Class<Rational> = self.ambient.basis(a);
                let beta: Class<Rational> = self.center.basis(b);
                let lhs = self.push_class(&self.center.mul(&self.restrict_class(&alpha), &beta));
                let rhs = self.ambient.mul(&alpha, &self.push_class(&beta));
                lhs == rhs
            })
        })
    }
}

pub(crate) fn apply_linear<R: Ring>(images: &[Class<Rational>], a: &Class<R>, target: usize) -> Class<R> {
    let mut out = Class::<R>::zero(target);
    for (c, img) in a.coords.iter().zip(images) {
        if c.is_zero() {
            continue;
        }
        for (k, q) in img.coords.iter().enumerate() {
            if !Ring::is_zero(q) {
                out.coords[k].add_assign(&c.scale(q));
            }
        }
    }
    out
}

/// Linear `Pᵐ ⊂ Pⁿ`: `N = O(1)^{n-m}`, `Q = O(1)^{n-m}` on `Pⁿ`.
pub fn linear_subspace(m: usize, n: usize) -> Result<Embedding> {
    if m > n {
        return Err(Error::DimensionMismatch(format!("P{m} does not embed linearly in P{n}")));
    }
    let x = projective_space(n);
    let z = projective_space(m);
    let r = n - m;
    let restrict = (0..=n)
        .map(|k| if k <= m { Class::basis(m + 1, k) } else { Class::zero(m + 1) })
        .collect();
    let push = (0..=m).map(|k| Class::basis(n + 1, k + r)).collect();
    let hz: Class<Rational> = if m == 0 { Class::zero(1) } else { Class::basis(m + 1, 1) };
    let hx: Class<Rational> = Class::basis(n + 1, 1);
    // A point has trivial normal bundle and Q; otherwise both are O(1)^r.
    let (nr, qr) = if m == 0 {
        (vec![Class::zero(1); r], vec![Class::zero(n + 1); r])
    } else {
        (vec![hz; r], vec![hx; r])
    };
    Ok(Embedding {
        ambient: x,
        center: z,
        codim: r,
        restrict,
        push,
        normal_roots: nr,
        q_roots: Some(qr),
    })
}
