//! Named genera on catalog spaces, and Riemann-Roch values.

use genus_forge::genus::registry::{lookup, parse_params};
use genus_forge::genus::{chi_y, projective_identities, todd};
use genus_forge::intersection::catalog;
use genus_forge::ring::Rational;

fn main() -> genus_forge::error::Result<()> {
    for space in ["P2", "P1xP1", "bl-pt-P2", "bl-line-P3"] {
        let x = catalog::lookup(space)?;
        for name in ["todd", "euler", "chi-y", "universal"] {
            let g = lookup(name, &parse_params("")?, x.dim() + 1)?;
            println!("{name:>9}({space}) = {}", g.eval(&x)?);
        }
        println!("     chi_y coefficients: {:?}", chi_y(&x, 0)?.iter().map(|q| q.to_string()).collect::<Vec<_>>());
    }
    println!("{}", projective_identities(&todd::<Rational>(7), 5).summary());
    Ok(())
}
