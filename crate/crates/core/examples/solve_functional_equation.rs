//! Solves the functional equation degree by degree and recovers the
//! Weierstrass data of the solution.

use genus_forge::funeq::{solve_fe, weierstrass_from_fe};

fn main() -> genus_forge::error::Result<()> {
    let s = solve_fe(10)?;
    for i in 3..=7 {
        println!("f{i} = {}", s.f_coeff(i));
    }
    for i in 1..=5 {
        println!("a{i} = {}", s.a_coeff(i));
    }
    let (dict, report) = weierstrass_from_fe(&s)?;
    println!("g2 = {}", dict.g2);
    println!("g3 = {}", dict.g3);
    println!("{}", report.summary());
    Ok(())
}
