//! Subdividing each square of the 2x2 torus into an L x L grid.

use cone_codes::constructions::{check_square_complex, l_subdivision, subdivision_qubits, toric_code};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = toric_code(2);
    let squares = check_square_complex(&a)?;
    println!("2x2 torus: {} squares", squares.squares.len());
    for l in 2..=4 {
        let c = l_subdivision(&a, l)?;
        c.verify()?;
        let code = c.code()?;
        println!("L={l}: n={} (predicted {}) k={}", code.n(), subdivision_qubits(&a, l), code.k());
    }
    Ok(())
}
