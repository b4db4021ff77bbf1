//! Homology of the three repetition complexes and a string defect.

use cone_codes::constructions::{cyclic_repetition, dangling_repetition, repetition, string_defect};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for l in 2..=5 {
        let open = repetition(l)?.betti()?;
        let cyclic = cyclic_repetition(l)?.betti()?;
        let dangling = dangling_repetition(l)?.betti()?;
        println!("L={l}  R: {open:?}  cyclic: {cyclic:?}  dangling: {dangling:?}");
    }

    let r = repetition(5)?;
    let defect = string_defect(5, &[1, 3])?;
    let cells: Vec<String> = (0..=1)
        .flat_map(|deg| r.basis(deg).iter())
        .filter(|label| label.coord().is_some_and(|c| defect.contains(c)))
        .map(ToString::to_string)
        .collect();
    println!("R[{{1,3}}) in R(5) covers {}", cells.join(" "));
    Ok(())
}
