//! Cohomology rings of blow-ups and projective bundles.

use genus_forge::intersection::{blow_up, catalog, linear_subspace};

fn main() -> genus_forge::error::Result<()> {
    let bl = blow_up(&linear_subspace(1, 3)?)?;
    let y = &bl.model;
    println!("{}: basis {:?}", y.name(), y.labels());
    let h = bl.pullback(&bl.embedding.ambient.class("h")?);
    let e = bl.exceptional();
    println!("h^3 = {}, h^2 E = {}, h E^2 = {}, E^3 = {}",
        y.integrate(&y.pow(&h, 3)),
        y.integrate(&y.mul(&y.pow(&h, 2), &e)),
        y.integrate(&y.mul(&h, &y.pow(&e, 2))),
        y.integrate(&y.pow(&e, 3)));
    println!("c(T) = {}", y.show(y.chern()?));
    println!("c1^3 = {}, euler number = {}", y.chern_number(&[1, 1, 1])?, y.euler_number()?);

    let p = catalog::lookup("proj-bundle(P1;1,1,0)")?;
    println!("{}: euler number {}", p.name(), p.euler_number()?);
    Ok(())
}
