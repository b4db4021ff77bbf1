//! Honeycomb and triangular lattices as cones over the square torus.

use cone_codes::constructions::{honeycomb_cone, toric, triangular_cone, Boundary};
use cone_codes::css::DEFAULT_DISTANCE_CAP;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let torus = toric(Boundary::Cyclic, Boundary::Cyclic, 3, 3)?;
    for c in [honeycomb_cone(&torus)?, triangular_cone(&torus)?] {
        let v = c.verify()?;
        let p = c.code()?.parameters(DEFAULT_DISTANCE_CAP);
        println!("{}: total dims {:?}", c.name, v.total.dims());
        println!("  [[{}, {}]] d_Z={} d_X={} weights {:?}", p.n, p.k, p.d_z, p.d_x, p.weights);
        for (m, iso) in &v.isomorphisms {
            println!("  H_{m} embedding is {}x{} of rank {}", iso.rows(), iso.cols(), iso.rank());
        }
    }
    Ok(())
}
