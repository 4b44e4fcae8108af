//! JSON form of series: a list of `{"exponents": [...], "coeff": "p/q"}`.
//!
//! The first exponent is the series variable; the rest follow the parameter
//! order passed by the caller. Zero coefficients are omitted.

use serde::{Deserialize, Serialize};

use super::{LaurentSeries, Series};
use crate::error::{Error, Result};
use crate::ring::{parse_rational, rational_to_string, ParamPoly, Rational, Ring, Var};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub exponents: Vec<i64>,
    pub coeff: String,
}

/// Coefficient rings with a flat rational-term representation.
pub trait JsonCoeff: Ring {
    fn to_terms(&self, vars: &[Var]) -> Result<Vec<(Vec<u32>, Rational)>>;
    fn from_terms(vars: &[Var], terms: &[(Vec<u32>, Rational)]) -> Result<Self>;
}

impl JsonCoeff for Rational {
    fn to_terms(&self, _vars: &[Var]) -> Result<Vec<(Vec<u32>, Rational)>> {
        Ok(if Ring::is_zero(self) {
            Vec::new()
        } else {
            vec![(Vec::new(), self.clone())]
        })
    }

    fn from_terms(_vars: &[Var], terms: &[(Vec<u32>, Rational)]) -> Result<Self> {
        let mut acc = <Rational as Ring>::zero();
        for (es, c) in terms {
            if es.iter().any(|&e| e != 0) {
                return Err(Error::Parse("rational coefficient with parameters".into()));
            }
            acc += c;
        }
        Ok(acc)
    }
}

impl JsonCoeff for ParamPoly {
    fn to_terms(&self, vars: &[Var]) -> Result<Vec<(Vec<u32>, Rational)>> {
        self.exponent_vectors(vars)
    }

    fn from_terms(vars: &[Var], terms: &[(Vec<u32>, Rational)]) -> Result<Self> {
        Ok(ParamPoly::from_exponent_vectors(vars, terms))
    }
}

fn push_terms<R: JsonCoeff>(out: &mut Vec<JsonTerm>, k: i64, c: &R, vars: &[Var]) -> Result<()> {
    for (es, q) in c.to_terms(vars)? {
        let mut exponents = vec![k];
        exponents.extend(es.iter().map(|&e| e as i64));
        out.push(JsonTerm {
            exponents,
            coeff: rational_to_string(&q),
        });
    }
    Ok(())
}

pub fn poly_to_json(p: &ParamPoly, vars: &[Var]) -> Result<Vec<JsonTerm>> {
    Ok(p.exponent_vectors(vars)?
        .into_iter()
        .map(|(es, q)| JsonTerm {
            exponents: es.into_iter().map(i64::from).collect(),
            coeff: rational_to_string(&q),
        })
        .collect())
}

pub fn series_to_json<R: JsonCoeff>(s: &Series<R>, vars: &[Var]) -> Result<Vec<JsonTerm>> {
    let mut out = Vec::new();
    for (k, c) in s.coeffs().iter().enumerate() {
        push_terms(&mut out, k as i64, c, vars)?;
    }
    Ok(out)
}

pub fn laurent_to_json<R: JsonCoeff>(s: &LaurentSeries<R>, vars: &[Var]) -> Result<Vec<JsonTerm>> {
    let mut out = Vec::new();
    for (k, c) in s.terms() {
        push_terms(&mut out, k, c, vars)?;
    }
    Ok(out)
}

fn grouped(terms: &[JsonTerm], nvars: usize) -> Result<Vec<(i64, Vec<u32>, Rational)>> {
    terms
        .iter()
        .map(|t| {
            if t.exponents.len() != nvars + 1 {
                return Err(Error::Parse(format!(
                    "expected {} exponents, found {}",
                    nvars + 1,
                    t.exponents.len()
                )));
            }
            let rest = t.exponents[1..]
                .iter()
                .map(|&e| u32::try_from(e).map_err(|_| Error::Parse(format!("negative exponent {e}"))))
                .collect::<Result<Vec<_>>>()?;
            Ok((t.exponents[0], rest, parse_rational(&t.coeff)?))
        })
        .collect()
}

pub fn series_from_json<R: JsonCoeff>(terms: &[JsonTerm], order: usize, vars: &[Var]) -> Result<Series<R>> {
    let rows = grouped(terms, vars.len())?;
    let mut buckets: Vec<Vec<(Vec<u32>, Rational)>> = vec![Vec::new(); order + 1];
    for (k, es, q) in rows {
        let k = usize::try_from(k)
            .ok()
            .filter(|&k| k <= order)
            .ok_or_else(|| Error::Parse(format!("exponent {k} outside 0..={order}")))?;
        buckets[k].push((es, q));
    }
    let coeffs = buckets
        .iter()
        .map(|b| R::from_terms(vars, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(Series::new(coeffs, order))
}
