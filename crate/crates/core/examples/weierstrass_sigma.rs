//! Weierstrass functions with symbolic invariants, and the sigma-quotient
//! series `f` with its correction `A(t, r)` over the ring of Laurent series
//! in the point `z`.

use genus_forge::ring::{int, ParamPoly};
use genus_forge::weierstrass::{wp_series, SigmaFamily};

fn main() -> genus_forge::error::Result<()> {
    let wp = wp_series(&ParamPoly::var("g2"), &ParamPoly::var("g3"), 8);
    println!("wp(x) = {wp}");

    let fam = SigmaFamily::generic(16);
    let f = fam.f(4)?;
    for i in 0..=4 {
        println!("f_{i} = {}", f.coeff(i));
    }
    let a = fam.jacobian_a(&int(2), 3)?;
    println!("A(t, 2), t^1 coefficient = {}", a.coeff(1));
    Ok(())
}
