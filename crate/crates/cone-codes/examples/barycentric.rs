//! Barycentric subdivision of a small simplicial complex as a cone.

use cone_codes::constructions::{barycentric_cone, simpl_chain, SimplicialComplex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![1, 2, 3], vec![3, 4]])?;
    let base = simpl_chain(&k);
    let c = barycentric_cone(&k)?;
    c.verify()?;
    let total = c.assemble()?;
    println!("K: dims {:?}, betti {:?}", base.dims(), base.betti()?);
    println!("sd(K): dims {:?}, betti {:?}", total.dims(), total.betti()?);
    println!("{} levels, regular at {:?}", c.spec.num_levels(), c.regular_degrees);
    Ok(())
}
