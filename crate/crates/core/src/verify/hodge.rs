//! Restriction to a hyperplane `D ⊂ Pⁿ`:
//!
//! ```text
//! χ(Pⁿ, Ω^p(ℓ)) = χ(Pⁿ, Ω^p(ℓ-1)) + χ(P^{n-1}, Ω^p(ℓ)) + χ(P^{n-1}, Ω^{p-1}(ℓ-1))
//! ```
//!
//! from `0 → O((ℓ-1)D) → O(ℓD) → O_D(ℓD) → 0` and
//! `Ω^p|_D = Ω^p_D ⊕ O_D(-D) ⊗ Ω^{p-1}_D`. For `p = 0` the last term is
//! absent.

use crate::error::Result;
use crate::genus::chi_hrr;
use crate::intersection::projective_space;
use crate::report::VerificationReport;
use crate::ring::{fmt_rational, int, Rational};

/// `χ(Pⁿ, Ω^p(ℓ))`.
pub fn chi_projective(n: usize, p: usize, l: i64) -> Result<Rational> {
    if n == 0 {
        return Ok(int(i64::from(p == 0)));
    }
    let x = projective_space(n);
    let h = x.class("h")?;
    chi_hrr(&x, &h.scale(&int(l)), p)
}

/// The four terms `(lhs, χ(ℓ-1), χ_D(ℓ), χ_D^{p-1}(ℓ-1))`.
pub fn recursion_terms(n: usize, p: usize, l: i64) -> Result<[Rational; 4]> {
    let last = if p == 0 { int(0) } else { chi_projective(n - 1, p - 1, l - 1)? };
    Ok([
        chi_projective(n, p, l)?,
        chi_projective(n, p, l - 1)?,
        chi_projective(n - 1, p, l)?,
        last,
    ])
}

/// All `0 ≤ ℓ ≤ lmax`, `0 ≤ p ≤ min(pmax, n)`, for `n ≥ 1`.
pub fn verify_hodge_recursion(n: usize, lmax: i64, pmax: usize) -> VerificationReport {
    let check = format!("hodge-recursion/n={n}/lmax={lmax}/pmax={pmax}");
    VerificationReport::timed(&check.clone(), || {
        if n == 0 {
            return Err(crate::error::Error::Precondition("n must be at least 1".into()));
        }
        let mut parts = Vec::new();
        for p in 0..=pmax.min(n) {
            for l in 0..=lmax {
                let [lhs, a, b, c] = recursion_terms(n, p, l)?;
                let rhs = &a + &b + &c;
                let name = format!("p={p}/l={l}");
                let rhs_s = format!("{} + {} + {}", fmt_rational(&a), fmt_rational(&b), fmt_rational(&c));
                parts.push(if lhs == rhs {
                    VerificationReport::pass(name, fmt_rational(&lhs), rhs_s)
                } else {
                    VerificationReport::fail(name.clone(), fmt_rational(&lhs), rhs_s, name)
                });
            }
        }
        let count = parts.len();
        let mut r = VerificationReport::all(check.clone(), parts);
        if r.is_pass() {
            r.lhs = format!("{count} instances");
            r.rhs = format!("{count} instances");
        }
        Ok(r)
    })
}
