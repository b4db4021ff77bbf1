//! Parameters of toric codes under each pair of boundary conditions.

use cone_codes::constructions::{toric, Boundary};
use cone_codes::css::{CssCode, DEFAULT_DISTANCE_CAP};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pairs = [
        (Boundary::Cyclic, Boundary::Cyclic),
        (Boundary::Smooth, Boundary::Rough),
        (Boundary::Smooth, Boundary::Smooth),
    ];
    for (bx, by) in pairs {
        for l in 2..=4 {
            let code = CssCode::from_complex(toric(bx, by, l, l)?.complex)?;
            let p = code.parameters(DEFAULT_DISTANCE_CAP);
            println!("{bx:?} x {by:?} {l}x{l}: [[{}, {}]] d_Z={} d_X={}", p.n, p.k, p.d_z, p.d_x);
        }
    }
    Ok(())
}
