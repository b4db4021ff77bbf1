//! Seeded random complexes, CSS codes and chain-map cones for property tests.

use rand::Rng;

use crate::chain::{BasedComplex, CellLabel};
use crate::cone::{ConeSpec, Level};
use crate::css::CssCode;
use crate::f2linalg::{BitMatrix, BitVec};

use super::ConstructionError;

fn labels(degree: usize, n: usize) -> Vec<CellLabel> {
    (0..n).map(|k| CellLabel::Int((100 * degree + k) as i64)).collect()
}

fn random_combination<R: Rng + ?Sized>(rng: &mut R, basis: &BitMatrix) -> BitVec {
    let mut v = BitVec::zeros(basis.rows());
    for c in 0..basis.cols() {
        if rng.gen_bool(0.5) {
            v.xor_assign(&basis.column(c));
        }
    }
    v
}

/// Random complex with `dims[i]` cells in degree `i`. The top differential has
/// independent fair bits; every lower row is a random element of the left kernel
/// of the differential above it.
#[must_use]
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> BasedComplex {
    let top = dims.len().saturating_sub(1);
    let mut diffs: Vec<BitMatrix> = Vec::with_capacity(top);
    for i in (1..=top).rev() {
        let d = match diffs.last() {
            None => BitMatrix::from_entries(
                dims[i - 1],
                dims[i],
                (0..dims[i - 1])
                    .flat_map(|r| (0..dims[i]).map(move |c| (r, c)))
                    .filter(|_| rng.gen_bool(0.5))
                    .collect::<Vec<_>>(),
            ),
            Some(above) => {
                let left_kernel = above.transpose().kernel_basis();
                let rows: Vec<BitVec> = (0..dims[i - 1]).map(|_| random_combination(rng, &left_kernel)).collect();
                BitMatrix::from_rows(dims[i], &rows)
            }
        };
        diffs.push(d);
    }
    diffs.reverse();
    let bases = dims.iter().enumerate().map(|(i, &n)| labels(i, n)).collect();
    BasedComplex::new(bases, diffs).expect("rows drawn from the left kernel")
}

/// Random CSS code with `4 ≤ n ≤ 8`, `1 ≤ n_X, n_Z ≤ 3`, and no empty generator or check.
#[must_use]
pub fn random_css<R: Rng + ?Sized>(rng: &mut R) -> CssCode {
    loop {
        let n = rng.gen_range(4..=8);
        let dims = [rng.gen_range(1..=3), n, rng.gen_range(1..=3)];
        let c = random_complex(rng, &dims);
        let empty_z = c.diff_ref(2).column_weights().contains(&0);
        let d1 = c.diff_ref(1);
        let empty_x = (0..d1.rows()).any(|r| d1.row_weight(r) == 0);
        if !empty_z && !empty_x {
            return CssCode::from_complex(c).expect("length-2 complex");
        }
    }
}

/// A chain map `f: source → target` and the two-level cone it glues.
#[derive(Clone, Debug)]
pub struct ChainMapCone {
    pub source: BasedComplex,
    pub target: BasedComplex,
    /// `maps[j]: source_j → target_j`.
    pub maps: Vec<BitMatrix>,
    /// `source` at level 1 shifted up by one, `target` at level 0.
    pub spec: ConeSpec,
}

/// Random chain map between two random complexes of the given dimensions,
/// drawn uniformly from the solution space of `∂f = f∂`.
///
/// # Errors
///
/// Rejects dimension lists of different lengths.
pub fn random_chain_map_cone<R: Rng + ?Sized>(
    rng: &mut R,
    source_dims: &[usize],
    target_dims: &[usize],
) -> Result<ChainMapCone, ConstructionError> {
    if source_dims.len() != target_dims.len() || source_dims.is_empty() {
        return Err(ConstructionError::Parameter("chain map needs complexes of equal nonzero length".into()));
    }
    let source = random_complex(rng, source_dims);
    let target = random_complex(rng, target_dims);
    let top = source.top_degree();
    let mut offsets = Vec::with_capacity(top + 2);
    let mut acc = 0;
    for j in 0..=top {
        offsets.push(acc);
        acc += target.dim(j) * source.dim(j);
    }
    let unknowns = acc;
    // Entry (r, c) of f_j is variable offsets[j] + r * source_j + c.
    let var = |j: usize, r: usize, c: usize| offsets[j] + r * source.dim(j) + c;
    let mut rows = Vec::new();
    for j in 1..=top {
        let dt = target.diff_ref(j);
        let ds = source.diff_ref(j);
        for r in 0..target.dim(j - 1) {
            for c in 0..source.dim(j) {
                let mut row = BitVec::zeros(unknowns);
                for k in 0..target.dim(j) {
                    if dt.get(r, k) {
                        row.flip(var(j, k, c));
                    }
                }
                for k in 0..source.dim(j - 1) {
                    if ds.get(k, c) {
                        row.flip(var(j - 1, r, k));
                    }
                }
                rows.push(row);
            }
        }
    }
    let solutions = BitMatrix::from_rows(unknowns, &rows).kernel_basis();
    let x = random_combination(rng, &solutions);
    let maps: Vec<BitMatrix> = (0..=top)
        .map(|j| {
            BitMatrix::from_entries(
                target.dim(j),
                source.dim(j),
                (0..target.dim(j))
                    .flat_map(|r| (0..source.dim(j)).map(move |c| (r, c)))
                    .filter(|&(r, c)| x.get(var(j, r, c)))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut spec = ConeSpec::new(vec![Level::new(target.clone(), 0), Level::new(source.clone(), 1)]);
    for (j, f) in maps.iter().enumerate() {
        spec.set_block(0, 1, j + 1, f.clone())?;
    }
    Ok(ChainMapCone {
        source,
        target,
        maps,
        spec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_complexes_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let dims: Vec<usize> = (0..4).map(|_| rng.gen_range(0..=6)).collect();
            random_complex(&mut rng, &dims).validate().unwrap();
        }
    }

    #[test]
    fn random_codes_have_full_supports() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let code = random_css(&mut rng);
            assert!(code.n() <= 8);
            assert!(code.h_z().column_weights().iter().all(|&w| w > 0));
        }
    }

    #[test]
    fn chain_maps_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let c = random_chain_map_cone(&mut rng, &[3, 4, 2], &[2, 3, 3]).unwrap();
            for j in 1..=2 {
                let lhs = c.target.diff_ref(j).multiply(&c.maps[j]).unwrap();
                let rhs = c.maps[j - 1].multiply(c.source.diff_ref(j)).unwrap();
                assert_eq!(lhs, rhs);
            }
            c.spec.assemble().unwrap().validate().unwrap();
        }
        assert!(random_chain_map_cone(&mut rng, &[1], &[1, 1]).is_err());
    }

    #[test]
    fn same_seed_same_code() {
        let a = random_css(&mut ChaCha8Rng::seed_from_u64(5));
        let b = random_css(&mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a.complex(), b.complex());
    }
}
