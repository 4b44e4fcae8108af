//! Structured pass/fail records for identity checks.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ring::{rational_to_string, ParamPoly, RatFunc, Rational, Ring};
use crate::series::LaurentSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

/// One checked identity. `lhs` and `rhs` are exact serializations; rationals
/// are always written `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub first_discrepancy: Option<String>,
    pub millis: u64,
}

/// Exact textual form used in reports.
pub trait ExactValue {
    fn exact(&self) -> String;
}

impl ExactValue for Rational {
    fn exact(&self) -> String {
        rational_to_string(self)
    }
}

impl ExactValue for ParamPoly {
    fn exact(&self) -> String {
        self.to_exact_string()
    }
}

impl ExactValue for RatFunc {
    fn exact(&self) -> String {
        let side = |p: &crate::ring::UniPoly| {
            let terms = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !Ring::is_zero(*c))
                .map(|(i, c)| match i {
                    0 => rational_to_string(c),
                    1 => format!("{}*y", rational_to_string(c)),
                    _ => format!("{}*y^{i}", rational_to_string(c)),
                })
                .collect::<Vec<_>>();
            if terms.is_empty() {
                "0/1".to_string()
            } else {
                terms.join(" + ")
            }
        };
        if self.den().degree() == Some(0) {
            side(self.num())
        } else {
            format!("({})/({})", side(self.num()), side(self.den()))
        }
    }
}

/// Terms `(c)*t^k`, then the truncation marker when inexact.
impl<R: Ring + ExactValue> ExactValue for LaurentSeries<R> {
    fn exact(&self) -> String {
        let mut parts: Vec<String> = self
            .terms()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({})*t^{k}", c.exact()))
            .collect();
        if parts.is_empty() {
            parts.push("0/1".into());
        }
        if let Some(o) = self.order() {
            parts.push(format!("O(t^{})", o + 1));
        }
        parts.join(" + ")
    }
}

impl ExactValue for String {
    fn exact(&self) -> String {
        self.clone()
    }
}

impl ExactValue for &str {
    fn exact(&self) -> String {
        self.to_string()
    }
}

impl VerificationReport {
    pub fn new(check: impl Into<String>, status: Status, lhs: String, rhs: String) -> Self {
        VerificationReport {
            check: check.into(),
            status,
            lhs,
            rhs,
            first_discrepancy: None,
            millis: 0,
        }
    }

    /// Pass iff `lhs - rhs` is zero in the coefficient ring.
    pub fn compare<R: Ring + ExactValue>(check: impl Into<String>, lhs: &R, rhs: &R) -> Self {
        let ok = lhs.sub(rhs).is_zero();
        let mut r = Self::new(
            check,
            if ok { Status::Pass } else { Status::Fail },
            lhs.exact(),
            rhs.exact(),
        );
        if !ok {
            r.first_discrepancy = Some(format!("difference {}", lhs.sub(rhs).exact()));
        }
        r
    }

    pub fn pass(check: impl Into<String>, lhs: String, rhs: String) -> Self {
        Self::new(check, Status::Pass, lhs, rhs)
    }

    pub fn fail(check: impl Into<String>, lhs: String, rhs: String, at: String) -> Self {
        let mut r = Self::new(check, Status::Fail, lhs, rhs);
        r.first_discrepancy = Some(at);
        r
    }

    pub fn error(check: impl Into<String>, err: &crate::error::Error) -> Self {
        let mut r = Self::new(check, Status::Error, String::new(), String::new());
        r.first_discrepancy = Some(err.to_string());
        r
    }

    /// Runs `body`, recording wall time and turning an `Err` into an
    /// `error` report named `check`.
    pub fn timed(check: &str, body: impl FnOnce() -> Result<VerificationReport>) -> Self {
        let start = Instant::now();
        let mut r = match body() {
            Ok(r) => r,
            Err(e) => Self::error(check, &e),
        };
        r.millis = start.elapsed().as_millis() as u64;
        r
    }

    pub fn with_check(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Combines sub-checks: passes iff all pass; the first non-passing one
    /// supplies the sides and the locator.
    pub fn all(check: impl Into<String>, parts: Vec<VerificationReport>) -> Self {
        let check = check.into();
        let millis = parts.iter().map(|p| p.millis).sum();
        let bad = parts.iter().find(|p| !p.is_pass());
        let mut r = match bad {
            None => {
                let lhs = parts.iter().map(|p| p.lhs.as_str()).collect::<Vec<_>>().join("; ");
                let rhs = parts.iter().map(|p| p.rhs.as_str()).collect::<Vec<_>>().join("; ");
                Self::pass(check, lhs, rhs)
            }
            Some(b) => {
                let mut r = b.clone().with_check(check);
                r.first_discrepancy = Some(format!(
                    "{}: {}",
                    b.check,
                    b.first_discrepancy.clone().unwrap_or_default()
                ));
                r
            }
        };
        r.millis = millis;
        r
    }

    /// One line for terminals: `pass  check  lhs = rhs`.
    pub fn summary(&self) -> String {
        let mut s = format!("{:<5} {}", self.status, self.check);
        match self.status {
            Status::Pass => s.push_str(&format!("  [{} = {}]", short(&self.lhs), short(&self.rhs))),
            _ => s.push_str(&format!(
                "  [{} vs {}] {}",
                short(&self.lhs),
                short(&self.rhs),
                self.first_discrepancy.as_deref().unwrap_or("")
            )),
        }
        s
    }
}

fn short(s: &str) -> String {
    const MAX: usize = 60;
    if s.chars().count() <= MAX {
        s.to_string()
    } else {
        let head: String = s.chars().take(MAX).collect();
        format!("{head}...")
    }
}
