#![allow(dead_code)]

use cone_codes::constructions::{
    barycentric_cone, check_square_complex, hastings_cone, honeycomb_cone, l_subdivision, layer_code, random_css,
    steane, toric, toric_code, triangular_cone, x_reduce, xxx_ziz, z_thicken, Boundary, Construction,
    HeightFunction, SimplicialComplex,
};
use cone_codes::css::CssCode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 20_240_611;

pub struct Named {
    pub name: String,
    pub code: CssCode,
}

/// Toric 2×2 and 3×3, XXX/ZIZ, Steane and 20 seeded random codes with `n ≤ 8`.
pub fn corpus() -> Vec<Named> {
    let mut out = vec![
        Named { name: "toric 2x2".into(), code: toric_code(2) },
        Named { name: "toric 3x3".into(), code: toric_code(3) },
        Named { name: "xxx/ziz".into(), code: xxx_ziz() },
        Named { name: "steane".into(), code: steane() },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for k in 0..20 {
        out.push(Named { name: format!("random #{k}"), code: random_css(&mut rng) });
    }
    out
}

/// Small simplicial complexes: at most 3 top simplices, dimension at most 3.
pub fn simplicial_corpus() -> Vec<(&'static str, SimplicialComplex)> {
    let list: Vec<(&str, Vec<Vec<i64>>)> = vec![
        ("point", vec![vec![0]]),
        ("edge", vec![vec![0, 1]]),
        ("two points", vec![vec![0], vec![1]]),
        ("path", vec![vec![0, 1], vec![1, 2]]),
        ("circle", vec![vec![0, 1], vec![1, 2], vec![0, 2]]),
        ("triangle", vec![vec![0, 1, 2]]),
        ("triangle + tail", vec![vec![0, 1, 2], vec![2, 3]]),
        ("two triangles", vec![vec![0, 1, 2], vec![1, 2, 3]]),
        ("bowtie", vec![vec![0, 1, 2], vec![2, 3, 4]]),
        ("tetrahedron", vec![vec![0, 1, 2, 3]]),
        ("two tetrahedra", vec![vec![0, 1, 2, 3], vec![1, 2, 3, 4]]),
        ("triangle + circle", vec![vec![0, 1, 2], vec![2, 3], vec![3, 0]]),
    ];
    list.into_iter()
        .map(|(n, f)| (n, SimplicialComplex::from_facets(&f).expect("valid facets")))
        .collect()
}

/// Every applicable construction over the corpus, labelled `construction(input)`.
pub fn constructions() -> Vec<(String, Construction)> {
    let mut out = Vec::new();
    for l in [2, 3] {
        let t = toric(Boundary::Cyclic, Boundary::Cyclic, l, l).expect("torus");
        out.push((format!("honeycomb(toric {l}x{l})"), honeycomb_cone(&t).expect("honeycomb")));
        out.push((format!("triangular(toric {l}x{l})"), triangular_cone(&t).expect("triangular")));
    }
    for (name, k) in simplicial_corpus() {
        out.push((format!("barycentric({name})"), barycentric_cone(&k).expect("barycentric")));
    }
    for Named { name, code } in corpus() {
        out.push((format!("layer({name})"), layer_code(&code).expect("layer")));
        if check_square_complex(&code).is_ok() {
            out.push((format!("subdivision({name}, L=2)"), l_subdivision(&code, 2).expect("subdivision")));
        }
        out.push((format!("x-reduce({name})"), x_reduce(&code).expect("x-reduce")));
        let l = code.n_z().max(3);
        let h = HeightFunction::identity(code.n_z(), l).expect("heights");
        out.push((format!("z-thicken({name})"), z_thicken(&code, l, &h).expect("z-thicken")));
        let all: Vec<usize> = (0..code.n_z()).collect();
        out.push((format!("hastings({name})"), hastings_cone(&code, &all).expect("hastings")));
    }
    out
}

/// Smallest weight of a vector `v` with `check · v = 0` outside the column span of
/// `stabilizers`, by enumerating supports in order of weight. `None` above `max_weight`.
pub fn brute_force_distance(
    check: &cone_codes::f2linalg::BitMatrix,
    stabilizers: &cone_codes::f2linalg::BitMatrix,
    max_weight: usize,
) -> Option<usize> {
    use cone_codes::f2linalg::{BitMatrix, BitVec};
    let n = check.cols();
    let base_rank = stabilizers.rank();
    let outside = |v: &BitVec| {
        let mut cols = stabilizers.columns();
        cols.push(v.clone());
        BitMatrix::from_columns(n, &cols).rank() > base_rank
    };
    fn next_subset(idx: &mut [usize], n: usize) -> bool {
        let w = idx.len();
        for k in (0..w).rev() {
            if idx[k] < n - w + k {
                idx[k] += 1;
                for j in k + 1..w {
                    idx[j] = idx[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
    for w in 1..=max_weight.min(n) {
        let mut idx: Vec<usize> = (0..w).collect();
        loop {
            let v = BitVec::from_indices(n, idx.iter().copied());
            if check.mul_vec(&v).is_zero() && outside(&v) {
                return Some(w);
            }
            if !next_subset(&mut idx, n) {
                break;
            }
        }
    }
    None
}

/// `(d_Z, d_X)` by [`brute_force_distance`].
pub fn brute_force_distances(code: &CssCode, max_weight: usize) -> (Option<usize>, Option<usize>) {
    let c = code.complex();
    let d1 = c.diff(1);
    let d2 = c.diff(2);
    (
        brute_force_distance(&d1, &d2, max_weight),
        brute_force_distance(&d2.transpose(), &d1.transpose(), max_weight),
    )
}
