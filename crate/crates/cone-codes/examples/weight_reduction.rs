//! Full weight-reduction pipeline on the Steane code, stage by stage.

use cone_codes::constructions::{coning_graph, steane, triangulate, weight_reduce};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = steane();
    let g = coning_graph(&a, 0)?;
    let t = triangulate(&g);
    let sizes = |g: &cone_codes::constructions::ConingGraph| g.faces.iter().map(|f| f.vertices.len()).collect::<Vec<_>>();
    println!(
        "coning graph of generator 0: {} vertices, {} edges, face sizes {:?}, triangulated {:?}",
        g.vertices.len(),
        g.edges.len(),
        sizes(&g),
        sizes(&t)
    );

    let r = weight_reduce(&a)?;
    for (stage, w) in [("input", &r.input), ("x-reduce", &r.x_reduced), ("z-thicken", &r.thickened), ("output", &r.output_weights)] {
        println!("{stage:<10} w_Z={:<3} w_X={:<3} q_Z={:<3} q_X={}", w.w_z, w.w_x, w.q_z, w.q_x);
    }
    println!("k: {} -> {}, output n = {}", r.k_input, r.k_output, r.output.dim(1));
    for c in r.checks.iter().filter(|c| !c.holds()) {
        println!("violated: {c}");
    }
    Ok(())
}
