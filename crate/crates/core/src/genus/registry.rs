//! Genera by name, for the command line.

use std::collections::BTreeMap;
use std::fmt;

use super::{euler, genus_eval, q_product_genus, todd, universal, Genus, QProductParams, QRing};
use crate::error::{Error, Result};
use crate::intersection::VarietyModel;
use crate::report::ExactValue;
use crate::ring::{int, parse_rational, ParamPoly, RatFunc, Rational, Ring};
use crate::series::{exp_linear, one_minus_exp_neg, Series};
use crate::weierstrass::{AlgebraicFamily, SigmaFamily, ZRing};

pub const NAMES: [&str; 7] = [
    "todd",
    "euler",
    "chi-y",
    "elliptic-algebraic",
    "elliptic-sigma",
    "q-product",
    "universal",
];

/// A genus whose coefficient ring depends on its kind.
#[derive(Clone, Debug)]
pub enum NamedGenus {
    Rational(Genus<Rational>),
    Poly(Genus<ParamPoly>),
    RatFunc(Genus<RatFunc>),
    Sigma(Genus<ZRing>),
    QProduct(Genus<QRing>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum GenusValue {
    Rational(Rational),
    Poly(ParamPoly),
    RatFunc(RatFunc),
    Sigma(ZRing),
    QProduct(QRing),
}

impl GenusValue {
    pub fn exact(&self) -> String {
        match self {
            GenusValue::Rational(v) => v.exact(),
            GenusValue::Poly(v) => v.exact(),
            GenusValue::RatFunc(v) => v.exact(),
            GenusValue::Sigma(v) => v.exact(),
            GenusValue::QProduct(v) => v.exact(),
        }
    }
}

impl fmt::Display for GenusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusValue::Rational(v) => write!(f, "{v}"),
            GenusValue::Poly(v) => write!(f, "{v}"),
            GenusValue::RatFunc(v) => write!(f, "{v}"),
            GenusValue::Sigma(v) => write!(f, "{v}"),
            GenusValue::QProduct(v) => write!(f, "{v}"),
        }
    }
}

impl NamedGenus {
    pub fn name(&self) -> &str {
        match self {
            NamedGenus::Rational(g) => g.name(),
            NamedGenus::Poly(g) => g.name(),
            NamedGenus::RatFunc(g) => g.name(),
            NamedGenus::Sigma(g) => g.name(),
            NamedGenus::QProduct(g) => g.name(),
        }
    }

    pub fn eval(&self, x: &VarietyModel) -> Result<GenusValue> {
        Ok(match self {
            NamedGenus::Rational(g) => GenusValue::Rational(genus_eval(g, x)?),
            NamedGenus::Poly(g) => GenusValue::Poly(genus_eval(g, x)?),
            NamedGenus::RatFunc(g) => GenusValue::RatFunc(genus_eval(g, x)?),
            NamedGenus::Sigma(g) => GenusValue::Sigma(genus_eval(g, x)?),
            NamedGenus::QProduct(g) => GenusValue::QProduct(genus_eval(g, x)?),
        })
    }
}

/// `k=1,a=1/2,g2=-3` into a map; an empty string gives an empty map.
pub fn parse_params(s: &str) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=value, got {item:?}")))?;
        out.insert(k.trim().to_string(), parse_rational(v.trim())?);
    }
    Ok(out)
}

fn allow(params: &BTreeMap<String, Rational>, names: &[&str]) -> Result<()> {
    match params.keys().find(|k| !names.contains(&k.as_str())) {
        Some(k) => Err(Error::Parse(format!("unknown parameter {k:?}; expected one of {names:?}"))),
        None => Ok(()),
    }
}

/// Given value, or the free parameter of that name.
fn param(params: &BTreeMap<String, Rational>, name: &str) -> ParamPoly {
    params
        .get(name)
        .map(|q| ParamPoly::constant(q.clone()))
        .unwrap_or_else(|| ParamPoly::var(name))
}

fn integer(params: &BTreeMap<String, Rational>, name: &str, default: i64) -> Result<i64> {
    match params.get(name) {
        None => Ok(default),
        Some(q) if q.is_integer() => q
            .to_integer()
            .try_into()
            .map_err(|_| Error::Parse(format!("{name} is out of range"))),
        Some(q) => Err(Error::Parse(format!("{name} must be an integer, got {q}"))),
    }
}

/// `χ_y` genus twisted by `K^{-k}`: `f = e^{-kx}(1 - e^{-x})/(1 + y e^{-x})`.
pub fn chi_y_genus(k: i64, order: usize) -> Genus<RatFunc> {
    let lift = |q: &Rational| RatFunc::from_rational(q);
    let den = Series::one(order).add(&exp_linear(&int(-1), order).map(lift).scale_by(&RatFunc::y()));
    let f = one_minus_exp_neg::<Rational>(order)
        .map(lift)
        .mul(&den.invert_unit().expect("constant term 1 + y"))
        .mul(&exp_linear(&int(-k), order).map(lift));
    Genus::new(format!("chi-y(k={k})"), f).expect("valid series")
}

/// Looks up a genus; `order` is the `x`-order of its series. Parameters not
/// given stay symbolic where the genus allows it.
pub fn lookup(name: &str, params: &BTreeMap<String, Rational>, order: usize) -> Result<NamedGenus> {
    let order = order.max(2);
    match name.to_ascii_lowercase().as_str() {
        "todd" => {
            allow(params, &[])?;
            Ok(NamedGenus::Rational(todd(order)))
        }
        "euler" => {
            allow(params, &[])?;
            Ok(NamedGenus::Rational(euler(order)))
        }
        "chi-y" => {
            allow(params, &["k"])?;
            Ok(NamedGenus::RatFunc(chi_y_genus(integer(params, "k", 0)?, order)))
        }
        "elliptic-algebraic" => {
            allow(params, &["k", "a", "b", "g2"])?;
            let fam = AlgebraicFamily {
                k: param(params, "k"),
                a: param(params, "a"),
                b: param(params, "b"),
                g2: param(params, "g2"),
            };
            Ok(NamedGenus::Poly(Genus::new("elliptic-algebraic", fam.f(order)?)?))
        }
        "elliptic-sigma" => {
            allow(params, &["k", "g2", "g3"])?;
            let fam = SigmaFamily::new(param(params, "k"), param(params, "g2"), param(params, "g3"), 2 * order + 8);
            Ok(NamedGenus::Sigma(Genus::new("elliptic-sigma", fam.f(order)?)?))
        }
        "q-product" => {
            allow(params, &["k", "q"])?;
            let p = QProductParams {
                k: integer(params, "k", 0)?,
                q_order: integer(params, "q", 2)?.max(0) as usize,
                x_order: order,
            };
            Ok(NamedGenus::QProduct(q_product_genus(p)?))
        }
        "universal" => {
            allow(params, &[])?;
            Ok(NamedGenus::Poly(universal(order)))
        }
        other => Err(Error::Parse(format!("unknown genus {other:?}; known: {}", NAMES.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::{catalog, projective_space};
    use crate::ring::rat;

    fn eval(name: &str, params: &str, space: &str) -> GenusValue {
        let g = lookup(name, &parse_params(params).unwrap(), 8).unwrap();
        g.eval(&catalog::lookup(space).unwrap()).unwrap()
    }

    #[test]
    fn named_values() {
        assert_eq!(eval("todd", "", "P3"), GenusValue::Rational(int(1)));
        assert_eq!(eval("euler", "", "bl-line-P3"), GenusValue::Rational(int(6)));
        let chi = eval("chi-y", "", "P1");
        assert_eq!(chi.exact(), "1/1 + -1/1*y");
        let alg = eval("elliptic-algebraic", "k=0,a=0,b=0,g2=0", "P2");
        assert_eq!(alg, GenusValue::Poly(ParamPoly::zero()));
    }

    #[test]
    fn symbolic_parameters_stay_free() {
        let v = eval("elliptic-algebraic", "k=0", "P1");
        // f = x + (a/2)x³ + ..., so φ(P¹) = [y] g' = 0 + ... ; only k enters in degree one.
        assert_eq!(v, GenusValue::Poly(ParamPoly::zero()));
        let v = eval("universal", "", "P1");
        assert_eq!(v, GenusValue::Poly(ParamPoly::var("f2").scale(&int(-2))));
    }

    #[test]
    fn chi_y_twist() {
        // χ(P¹, K^{-1}) = χ(O(2)) = 3 and χ(P¹, K^{-1} ⊗ Ω¹) = χ(O) = 1.
        let g = chi_y_genus(1, 6);
        let v = genus_eval(&g, &projective_space(1)).unwrap();
        let y = RatFunc::y();
        assert_eq!(v, RatFunc::from_int(3).add(&y));
    }

    #[test]
    fn bad_input() {
        assert!(parse_params("k").is_err());
        assert!(lookup("nope", &BTreeMap::new(), 6).is_err());
        assert!(lookup("todd", &parse_params("k=1").unwrap(), 6).is_err());
        assert!(lookup("chi-y", &parse_params("k=1/2").unwrap(), 6).is_err());
        assert_eq!(parse_params("a=1/2").unwrap()["a"], rat(1, 2));
    }
}
