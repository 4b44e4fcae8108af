//! Exact truncated series: exp/log, reversion, and a residue.

use genus_forge::ring::{int, Rational};
use genus_forge::series::nilpotent::reciprocal;
use genus_forge::series::{one_minus_exp_neg, Series};

fn main() -> genus_forge::error::Result<()> {
    let x = Series::<Rational>::x(8);
    let e = x.exp()?;
    println!("exp(x)        = {e}");
    println!("log(exp(x))   = {}", e.log()?);

    let todd = one_minus_exp_neg::<Rational>(8);
    println!("1 - e^-x      = {todd}");
    println!("its inverse   = {}", todd.reversion()?);

    // 1/(1 - e^-x) has a simple pole with residue 1.
    let g = reciprocal(&todd)?;
    println!("1/(1 - e^-x)  = {g}");
    println!("residue       = {}", g.residue()?);
    assert_eq!(g.residue()?, int(1));
    Ok(())
}
