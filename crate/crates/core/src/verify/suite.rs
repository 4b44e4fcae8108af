//! Named checks with default parameters, run together and reported in
//! check-name order.

use std::thread;

use super::hodge::verify_hodge_recursion;
use super::prop21::{line_in_space, verify_two_blow_ups};
use super::residue::{residue_vanishes, residue_vanishing_s1, total_residue_identity};
use super::theorem_a::{case, free_cubic, verify_theorem_a};
use super::transition::{
    plane_resolutions, tower, transition_case, verify_change_of_variables, verify_resolution_independence,
    verify_transition, ToddCorrections,
};
use crate::error::{Error, Result};
use crate::funeq::{check_fe, derive_a_from_f, solve_a1, solve_fe, torsion2_check, weierstrass_from_fe};
use crate::genus::{
    chi_y_normalized, euler, genus_eval, projective_identities, q_at_zero, q_product_fe, q_product_genus, todd,
    universal, QProductParams,
};
use crate::intersection::{projective_space, Class};
use crate::report::VerificationReport;
use crate::ring::{int, rat, ParamPoly, Rational, Ring};
use crate::series::{one_minus_exp_neg, Series};
use crate::weierstrass::{AlgebraicFamily, SigmaFamily, TrigFamily};

/// `z`-order used with a genus series through `x^order`.
pub fn z_order_for(order: usize) -> usize {
    2 * order + 8
}

/// Smallest `z`-exponent a residue check must still see.
pub const MIN_Z_ORDER: i64 = 4;

fn v(s: &str) -> ParamPoly {
    ParamPoly::var(s)
}

/// The low-degree coefficients of the normalized solution:
/// `a2 = 3f3`, `a3 = 2f4 + a1 f3`, `a4 = 2a1 f4 + (3/2)f3²`,
/// `f5 = (3/10)f3² + (3/5)a1 f4`.
pub fn solver_relations(order: usize) -> VerificationReport {
    let check = format!("fe-solver/relations/order={order}");
    VerificationReport::timed(&check.clone(), || {
        let s = solve_fe(order.max(6))?;
        let (a1, f3, f4) = (v("a1"), v("f3"), v("f4"));
        let expected = [
            ("a2", s.a_coeff(2), f3.scale(&int(3))),
            ("a3", s.a_coeff(3), f4.scale(&int(2)).add(&a1.mul(&f3))),
            ("a4", s.a_coeff(4), a1.mul(&f4).scale(&int(2)).add(&f3.pow(2).scale(&rat(3, 2)))),
            ("f5", s.f_coeff(5), f3.pow(2).scale(&rat(3, 10)).add(&a1.mul(&f4).scale(&rat(3, 5)))),
        ];
        let parts = expected
            .iter()
            .map(|(name, got, want)| VerificationReport::compare(*name, *got, want))
            .collect();
        Ok(VerificationReport::all(check.clone(), parts))
    })
}

pub fn weierstrass_recovery(order: usize) -> VerificationReport {
    let check = format!("weierstrass-recovery/order={order}");
    VerificationReport::timed(&check.clone(), || {
        let s = solve_fe(order)?;
        Ok(weierstrass_from_fe(&s)?.1.with_check(check.clone()))
    })
}

/// The σ-form `f` with `A` derived from it passes the functional equation.
pub fn sigma_membership(degree: usize) -> VerificationReport {
    let check = format!("sigma-functional-equation/degree={degree}");
    VerificationReport::timed(&check.clone(), || {
        let fam = SigmaFamily::generic(z_order_for(degree));
        let f = fam.f(degree)?;
        let a1 = solve_a1(&f, degree)?;
        let a = derive_a_from_f(&f, &a1)?;
        let mut r = check_fe(&f, &a, degree).with_check(check.clone());
        let direct = fam.jacobian_a(&int(2), degree)?;
        if r.is_pass() && direct.truncate(a.order()) != a.truncate(direct.order()) {
            r = VerificationReport::fail(check.clone(), "A from f".into(), "A(t, 2)".into(), "A".into());
        }
        Ok(r)
    })
}

/// `x⁵` coefficient `3a²/8 - g2/40` of the algebraic form with `k = 0`.
pub fn algebraic_expansion() -> VerificationReport {
    VerificationReport::timed("algebraic-expansion/x^5", || {
        let fam = AlgebraicFamily { k: ParamPoly::zero(), a: v("a"), b: v("b"), g2: v("g2") };
        let f = fam.f(5)?;
        let want = v("a").pow(2).scale(&rat(3, 8)).sub(&v("g2").scale(&rat(1, 40)));
        Ok(VerificationReport::compare("algebraic-expansion/x^5", f.coeff(5), &want))
    })
}

pub fn residue_negative_control() -> VerificationReport {
    VerificationReport::timed("residue-negative-control", || {
        let bad = Series::<Rational>::from_rationals(&[int(0), int(1), int(0), int(0), int(0), int(1)], 12);
        let a = derive_a_from_f(&bad, &int(0))?;
        let r = residue_vanishes(&bad, &a, 2, 4);
        Ok(if r.is_pass() {
            VerificationReport::fail("residue-negative-control", r.lhs, "nonzero".into(), "residue vanished".into())
        } else {
            VerificationReport::pass("residue-negative-control", r.lhs, "nonzero".into())
        })
    })
}

pub fn s1(r: usize, degree: usize) -> VerificationReport {
    residue_vanishing_s1(&SigmaFamily::generic(z_order_for(degree) + 4), r, degree, MIN_Z_ORDER)
}

/// Theorem A on a named case for `todd`, `euler` or `universal`; the
/// universal genus uses a free cubic `A`.
pub fn theorem_a(case_name: &str, genus: &str, order: usize) -> VerificationReport {
    let check = format!("theorem-a/{case_name}/{genus}");
    VerificationReport::timed(&check.clone(), || {
        let bl = case(case_name)?;
        let one: Class<Rational> = bl.embedding.ambient.one();
        let order = order.max(bl.model.dim() + 2);
        Ok(match genus {
            "todd" => verify_theorem_a(&check, &todd::<Rational>(order), &bl, &Series::one(order), &one),
            "euler" => verify_theorem_a(&check, &euler::<Rational>(order), &bl, &Series::one(order), &one),
            "universal" => verify_theorem_a(&check, &universal(order), &bl, &free_cubic(order), &one),
            other => return Err(Error::Parse(format!("theorem-a genus {other:?}; expected todd, euler or universal"))),
        })
    })
}

pub fn transition(case_name: &str, e1: &Rational, order: usize) -> VerificationReport {
    let check = format!("transition/{case_name}");
    VerificationReport::timed(&check.clone(), || {
        let inst = transition_case(case_name, e1)?;
        Ok(verify_transition(&SigmaFamily::generic(z_order_for(order)), &inst, order))
    })
}

pub fn change_of_variables(tower_name: &str, order: usize) -> VerificationReport {
    let check = format!("change-of-variables/{tower_name}");
    VerificationReport::timed(&check.clone(), || {
        let t = tower(tower_name)?;
        Ok(verify_change_of_variables(&SigmaFamily::generic(z_order_for(order)), &t, order))
    })
}

pub fn change_of_variables_todd(tower_name: &str) -> VerificationReport {
    let check = format!("change-of-variables/{tower_name}/todd");
    VerificationReport::timed(&check.clone(), || {
        Ok(verify_change_of_variables(&ToddCorrections, &tower(tower_name)?, 6).with_check(check.clone()))
    })
}

/// Two resolutions of `P²` agree and a discrepancy of `-1` is rejected.
pub fn singular_genus_check(order: usize) -> VerificationReport {
    let check = "singular-genus/P2";
    VerificationReport::timed(check, || {
        let (id, pt) = plane_resolutions()?;
        let g = SigmaFamily::generic(z_order_for(order));
        let same = verify_resolution_independence(&g, &id, &pt, order);
        let mut bad = pt.clone();
        bad.divisors[0].1 = int(-1);
        let rejected = match super::transition::singular_genus(&g, &bad, order) {
            Err(Error::NotLogTerminal(e)) => VerificationReport::pass("rejects", format!("not log-terminal ({e})"), "error".into()),
            Err(e) => VerificationReport::fail("rejects", e.to_string(), "not log-terminal".into(), "error kind".into()),
            Ok(_) => VerificationReport::fail("rejects", "a value".into(), "not log-terminal".into(), "accepted".into()),
        };
        let mut r = VerificationReport::all(check, vec![same.clone(), rejected]);
        if r.is_pass() {
            r.lhs = same.lhs;
            r.rhs = same.rhs;
        }
        Ok(r)
    })
}

pub fn two_blow_ups(genus: &str, hyperplane: bool) -> VerificationReport {
    let name = format!("two-blow-ups/line-p3{}/{genus}", if hyperplane { "/h" } else { "" });
    VerificationReport::timed(&name.clone(), || {
        let p = line_in_space(hyperplane)?;
        let r = match genus {
            "todd" => verify_two_blow_ups(&todd::<Rational>(5), &p),
            "euler" => verify_two_blow_ups(&euler::<Rational>(5), &p),
            "universal" => verify_two_blow_ups(&universal(4), &p),
            other => return Err(Error::Parse(format!("genus {other:?}"))),
        };
        Ok(r.with_check(name.clone()))
    })
}

/// `q = 0` values of the q-product genus against Riemann-Roch on `P¹`, `P²`.
pub fn q_product_riemann_roch(k: i64) -> VerificationReport {
    let check = format!("q-product-riemann-roch/k={k}");
    VerificationReport::timed(&check.clone(), || {
        let g = q_at_zero(&q_product_genus(QProductParams { k, q_order: 1, x_order: 5 })?)?;
        let parts = (1..=2)
            .map(|n| {
                let x = projective_space(n);
                Ok(VerificationReport::compare(format!("P{n}"), &genus_eval(&g, &x)?, &chi_y_normalized(&x, k)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VerificationReport::all(check.clone(), parts))
    })
}

pub fn torsion2() -> VerificationReport {
    VerificationReport::timed("two-torsion-addition/sinh", || {
        let fam = TrigFamily { k: ParamPoly::zero(), ..TrigFamily::generic() };
        Ok(torsion2_check(&fam.f(10), 9).with_check("two-torsion-addition/sinh"))
    })
}

pub fn total_residues() -> VerificationReport {
    VerificationReport::timed("total-residue", || {
        let x = Series::<ParamPoly>::x(8);
        let a = Series::new(vec![ParamPoly::one(), v("a1")], 8);
        let todd_f = one_minus_exp_neg::<Rational>(9).map(|q| ParamPoly::constant(q.clone()));
        let u = universal(6);
        let ua = derive_a_from_f(u.f(), &v("a1"))?;
        Ok(VerificationReport::all(
            "total-residue",
            vec![
                total_residue_identity(&x, &a, 2, 4),
                total_residue_identity(&todd_f, &Series::one(9), 2, 3),
                total_residue_identity(u.f(), &ua, 3, 2),
            ],
        ))
    })
}

type Job = Box<dyn Fn() -> VerificationReport + Send + Sync>;

/// Every default check, unevaluated.
pub fn default_checks() -> Vec<Job> {
    let mut jobs: Vec<Job> = vec![
        Box::new(|| solver_relations(8)),
        Box::new(|| weierstrass_recovery(12)),
        Box::new(|| sigma_membership(12)),
        Box::new(algebraic_expansion),
        Box::new(|| s1(2, 8)),
        Box::new(|| s1(3, 6)),
        Box::new(residue_negative_control),
        Box::new(total_residues),
        Box::new(|| projective_identities(&todd::<Rational>(8), 6)),
        Box::new(|| projective_identities(&euler::<Rational>(8), 6)),
        Box::new(|| projective_identities(&universal(7), 6)),
        Box::new(|| transition("bl-pt-p2-line", &rat(1, 2), 8)),
        Box::new(|| transition("bl-pt-p2", &int(0), 8)),
        Box::new(|| transition("divisor-p2", &rat(1, 3), 8)),
        Box::new(|| change_of_variables("pt-p3", 8)),
        Box::new(|| change_of_variables("pt+line-p3", 8)),
        Box::new(|| change_of_variables_todd("pt+line-p3")),
        Box::new(|| singular_genus_check(8)),
        Box::new(|| q_product_fe(QProductParams { k: 0, q_order: 2, x_order: 8 }, 8)),
        Box::new(|| q_product_riemann_roch(0)),
        Box::new(|| q_product_riemann_roch(1)),
        Box::new(torsion2),
    ];
    for c in ["bl-pt-p2", "bl-pt-p3", "bl-line-p3"] {
        for g in ["todd", "euler", "universal"] {
            jobs.push(Box::new(move || theorem_a(c, g, 6)));
        }
    }
    for g in ["todd", "euler", "universal"] {
        for h in [false, true] {
            jobs.push(Box::new(move || two_blow_ups(g, h)));
        }
    }
    for n in 1..=3 {
        jobs.push(Box::new(move || verify_hodge_recursion(n, 3, n)));
    }
    jobs
}

/// Runs the jobs on up to `threads` threads; reports come back sorted by
/// check name.
pub fn run(jobs: &[Job], threads: usize) -> Vec<VerificationReport> {
    let threads = threads.max(1);
    let mut out: Vec<VerificationReport> = Vec::with_capacity(jobs.len());
    for chunk in jobs.chunks(threads) {
        thread::scope(|s| {
            let handles: Vec<_> = chunk.iter().map(|j| s.spawn(j)).collect();
            out.extend(handles.into_iter().map(|h| h.join().expect("check panicked")));
        });
    }
    out.sort_by(|a, b| a.check.cmp(&b.check));
    out
}

pub fn run_all(threads: usize) -> Vec<VerificationReport> {
    run(&default_checks(), threads)
}
