//! Cone of a random chain map between two seeded complexes.

use cone_codes::constructions::random_chain_map_cone;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c = random_chain_map_cone(&mut rng, &[3, 4, 2], &[2, 5, 3])?;
    let total = c.spec.assemble()?;
    println!("source betti {:?}", c.source.betti()?);
    println!("target betti {:?}", c.target.betti()?);
    println!("cone dims {:?}, betti {:?}", total.dims(), total.betti()?);
    for (j, f) in c.maps.iter().enumerate() {
        println!("f_{j}: {}x{} of rank {}", f.rows(), f.cols(), f.rank());
    }
    Ok(())
}
