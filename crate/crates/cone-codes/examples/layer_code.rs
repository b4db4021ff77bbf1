//! Layer code of a small CSS code and its distance bound.

use cone_codes::constructions::{layer_code, layer_distance_bound, xxx_ziz};
use cone_codes::css::{Side, DEFAULT_DISTANCE_CAP};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = xxx_ziz();
    let c = layer_code(&a)?;
    c.verify()?;
    let code = c.code()?;
    println!("input n={} k={}, layer n={} k={}", a.n(), a.k(), code.n(), code.k());

    let bound = layer_distance_bound(&a, DEFAULT_DISTANCE_CAP)?;
    for (side, b) in [(Side::Z, bound.z), (Side::X, bound.x)] {
        let d = code.distance(side, DEFAULT_DISTANCE_CAP)?;
        match (b, d) {
            (Some(b), Some(d)) => println!("{side:?}: d = {d} >= {}/{} holds: {}", b.num, b.den, b.satisfied_by(d)),
            _ => println!("{side:?}: no logical operators"),
        }
    }
    Ok(())
}
