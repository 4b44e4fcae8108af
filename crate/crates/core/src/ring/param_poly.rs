use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::{fmt_rational, is_negative, Rational, Ring};
use crate::error::{Error, Result};

/// A parameter name of at most eight ASCII bytes, packed so that the integer
/// order matches the lexicographic order of the names.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u64);

impl Var {
    /// Panics if `name` is empty, longer than eight bytes or not ASCII
    /// alphanumeric/underscore; use [`Var::parse`] for untrusted input.
    pub fn new(name: &str) -> Self {
        Self::parse(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn parse(name: &str) -> Result<Self> {
        let ok = !name.is_empty()
            && name.len() <= 8
            && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_');
        if !ok {
            return Err(Error::Parse(format!("invalid parameter name {name:?}")));
        }
        let mut packed = [0u8; 8];
        packed[..name.len()].copy_from_slice(name.as_bytes());
        Ok(Var(u64::from_be_bytes(packed)))
    }

    /// `base` followed by a decimal index, e.g. `n3`.
    pub fn indexed(base: &str, i: usize) -> Self {
        Self::new(&format!("{base}{i}"))
    }

    pub fn name(&self) -> String {
        let bytes = self.0.to_be_bytes();
        let end = bytes.iter().position(|&b| b == 0).unwrap_or(8);
        String::from_utf8_lossy(&bytes[..end]).into_owned()
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Sorted `(variable, exponent)` pairs with no zero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Self::one();
        for (v, e) in pairs {
            m = m.mul(&Self::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, vars: &[Var]) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| vars.contains(v))
            .map(|(_, e)| e)
            .sum()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes `v` from the monomial, returning its exponent.
    fn split_off(&self, v: Var) -> (Monomial, u32) {
        let e = self.exponent(v);
        let rest = self.0.iter().copied().filter(|(w, _)| *w != v).collect();
        (Monomial(rest), e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{self}")
        }
    }
}

/// Polynomial in named parameters with rational coefficients.
///
/// Terms live in a `BTreeMap`, so the term order is canonical and equality is
/// structural. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(), q);
        }
        ParamPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        Self::of(Var::new(name))
    }

    pub fn of(v: Var) -> Self {
        Self::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = ParamPoly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 if self.terms.contains_key(&Monomial::one()) => Some(self.constant_term()),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Drops every term whose total degree in `vars` exceeds `max`.
    pub fn truncate_degree_in(&self, vars: &[Var], max: u32) -> Self {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(vars) <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated to total degree `max` in `vars`; never forms the
    /// discarded terms.
    pub fn mul_truncated(&self, rhs: &Self, vars: &[Var], max: u32) -> Self {
        let mut out = ParamPoly::default();
        for (ma, ca) in &self.terms {
            let da = ma.degree_in(vars);
            if da > max {
                continue;
            }
            for (mb, cb) in &rhs.terms {
                if da + mb.degree_in(vars) <= max {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        out
    }

    /// Coefficient of `v^e`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, e: u32) -> Self {
        let mut out = ParamPoly::default();
        for (m, c) in &self.terms {
            let (rest, k) = m.split_off(v);
            if k == e {
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    pub fn degree_of(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Ring homomorphism into `R` determined by the images of the variables.
    pub fn eval_with<R: Ring>(&self, image: &dyn Fn(Var) -> R) -> R {
        let mut cache: BTreeMap<(Var, u32), R> = BTreeMap::new();
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for &(v, e) in m.pairs() {
                let p = cache
                    .entry((v, e))
                    .or_insert_with(|| image(v).pow(e))
                    .clone();
                t = t.mul(&p);
            }
            acc.add_assign(&t);
        }
        acc
    }

    /// Substitutes polynomials for some variables; unmapped ones stay.
    pub fn substitute(&self, map: &BTreeMap<Var, ParamPoly>) -> ParamPoly {
        self.eval_with(&|v| map.get(&v).cloned().unwrap_or_else(|| ParamPoly::of(v)))
    }

    /// Substitutes rational values for some variables.
    pub fn specialize(&self, values: &BTreeMap<Var, Rational>) -> ParamPoly {
        let map = values
            .iter()
            .map(|(v, q)| (*v, ParamPoly::constant(q.clone())))
            .collect();
        self.substitute(&map)
    }

    /// Exponent vectors relative to `vars`; fails if a term uses another
    /// variable.
    pub fn exponent_vectors(&self, vars: &[Var]) -> Result<Vec<(Vec<u32>, Rational)>> {
        self.terms
            .iter()
            .map(|(m, c)| {
                for (v, _) in m.pairs() {
                    if !vars.contains(v) {
                        return Err(Error::Precondition(format!(
                            "variable {v} not in serialization order {vars:?}"
                        )));
                    }
                }
                Ok((vars.iter().map(|v| m.exponent(*v)).collect(), c.clone()))
            })
            .collect()
    }

    pub fn from_exponent_vectors(vars: &[Var], terms: &[(Vec<u32>, Rational)]) -> Self {
        ParamPoly::from_terms(terms.iter().map(|(es, c)| {
            (
                Monomial::from_pairs(vars.iter().copied().zip(es.iter().copied())),
                c.clone(),
            )
        }))
    }
}

impl ParamPoly {
    /// Serialization with every coefficient written as `p/q`, in the same
    /// term order as `Display`: `3/5*a1*f4 + 3/10*f3^2`, `-1/2`, `0/1`.
    pub fn to_exact_string(&self) -> String {
        if self.terms.is_empty() {
            return "0/1".into();
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            a.0.total_degree()
                .cmp(&b.0.total_degree())
                .then_with(|| a.0.cmp(b.0))
        });
        terms
            .into_iter()
            .map(|(m, c)| {
                let q = super::rational_to_string(c);
                if m.is_one() {
                    q
                } else {
                    format!("{q}*{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Ring for ParamPoly {
    fn zero() -> Self {
        ParamPoly::default()
    }
    fn one() -> Self {
        ParamPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
    fn add_assign(&mut self, rhs: &Self) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()) {
            return rhs.scale(&self.terms[&Monomial::one()]);
        }
        let mut out = ParamPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }
    fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        ParamPoly::constant(q.clone())
    }
    fn inverse(&self) -> Option<Self> {
        let c = self.as_constant()?;
        if c.is_zero() {
            None
        } else {
            Some(ParamPoly::constant(c.recip()))
        }
    }
    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return ParamPoly::default();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            a.0.total_degree()
                .cmp(&b.0.total_degree())
                .then_with(|| a.0.cmp(b.0))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<Rational> for ParamPoly {
    fn from(q: Rational) -> Self {
        ParamPoly::constant(q)
    }
}

impl std::ops::Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        Ring::add(self, rhs)
    }
}

impl std::ops::Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        Ring::sub(self, rhs)
    }
}

impl std::ops::Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        Ring::mul(self, rhs)
    }
}

impl std::ops::Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        Ring::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rat};
    use proptest::prelude::*;

    fn p(name: &str) -> ParamPoly {
        ParamPoly::var(name)
    }

    #[test]
    fn var_packing_preserves_order_and_names() {
        let names = ["a", "a1", "b", "f3", "f4", "g2", "n10", "n2", "z"];
        let vars: Vec<Var> = names.iter().map(|n| Var::new(n)).collect();
        let mut sorted = vars.clone();
        sorted.sort();
        assert_eq!(vars, sorted);
        assert_eq!(Var::new("alpha_12").name(), "alpha_12");
        assert!(Var::parse("toolongname").is_err());
        assert!(Var::parse("").is_err());
        assert!(Var::parse("a-b").is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = p("x");
        let y = p("y");
        let d = (&(&x + &y) * &(&x - &y)).sub(&(&(&x * &x) - &(&y * &y)));
        assert!(d.is_zero());
        assert_eq!(d.num_terms(), 0);
    }

    #[test]
    fn display_is_canonical() {
        let q = &p("f3").pow(2).scale(&rat(3, 10)) + &(&p("a1") * &p("f4")).scale(&rat(3, 5));
        assert_eq!(q.to_string(), "3/5*a1*f4 + 3/10*f3^2");
        assert_eq!(ParamPoly::zero().to_string(), "0");
        assert_eq!((&ParamPoly::one() - &p("y")).to_string(), "1 - y");
        assert_eq!(q.to_exact_string(), "3/5*a1*f4 + 3/10*f3^2");
        assert_eq!((&ParamPoly::one() - &p("y")).to_exact_string(), "1/1 + -1/1*y");
        assert_eq!(ParamPoly::zero().to_exact_string(), "0/1");
    }

    #[test]
    fn truncation_and_coefficients() {
        let n1 = Var::new("n1");
        let n2 = Var::new("n2");
        let a = &(&ParamPoly::one() + &ParamPoly::of(n1)) + &p("g2");
        let cube = a.pow(3);
        let t = cube.truncate_degree_in(&[n1, n2], 1);
        assert_eq!(t.degree_of(n1), 1);
        assert_eq!(
            cube.mul_truncated(&a, &[n1], 2),
            cube.mul(&a).truncate_degree_in(&[n1], 2)
        );
        assert_eq!(cube.coefficient_of(n1, 3), ParamPoly::one());
        assert_eq!(
            cube.coefficient_of(n1, 2),
            (&ParamPoly::one() + &p("g2")).scale(&int(3))
        );
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let x = Var::new("x");
        let q = &p("x").pow(2) + &p("y");
        let mut map = BTreeMap::new();
        map.insert(x, &p("u") + &ParamPoly::one());
        let s = q.substitute(&map);
        assert_eq!(s, &(&p("u") + &ParamPoly::one()).pow(2) + &p("y"));
        let mut vals = BTreeMap::new();
        vals.insert(x, rat(1, 2));
        vals.insert(Var::new("y"), int(3));
        assert_eq!(q.specialize(&vals).as_constant(), Some(rat(13, 4)));
    }

    #[test]
    fn units_are_nonzero_constants() {
        assert_eq!(
            ParamPoly::constant(rat(2, 3)).inverse(),
            Some(ParamPoly::constant(rat(3, 2)))
        );
        assert!(p("a").inverse().is_none());
        assert!(ParamPoly::zero().inverse().is_none());
    }

    fn arb_poly() -> impl Strategy<Value = ParamPoly> {
        let vars = ["a1", "f3", "f4"];
        proptest::collection::vec(
            ((0u32..3, 0u32..3, 0u32..3), -5i64..6, 1i64..4),
            0..5,
        )
        .prop_map(move |ts| {
            ParamPoly::from_terms(ts.into_iter().map(|((e0, e1, e2), n, d)| {
                (
                    Monomial::from_pairs([
                        (Var::new(vars[0]), e0),
                        (Var::new(vars[1]), e1),
                        (Var::new(vars[2]), e2),
                    ]),
                    rat(n, d),
                )
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&(&a - &b) + &b).sub(&a).is_zero());
            prop_assert_eq!(&a * &ParamPoly::one(), a.clone());
        }
    }
}
