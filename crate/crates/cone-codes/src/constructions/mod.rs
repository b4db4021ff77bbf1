//! Named constructions, each emitted as a cone together with the embedded
//! code it is expected to reproduce.

use thiserror::Error;

use crate::chain::{BasedComplex, CellLabel, ChainError};
use crate::cone::{ConeError, ConeSpec};
use crate::css::{CssCode, CssError, ReasonableWitness};
use crate::f2linalg::BitMatrix;

pub mod codes;
pub mod layer;
pub mod random;
pub mod repetition;
pub mod simplicial;
pub mod square;
pub mod toric;
pub mod weight;

pub use codes::{steane, toric_code, xxx_ziz};
pub use layer::{layer_code, layer_distance_bound, pair_common_qubits, Bound, LayerBound};
pub use random::{random_chain_map_cone, random_complex, random_css, ChainMapCone};
pub use repetition::{cyclic_repetition, dangling_repetition, repetition, string_defect, StringDefect};
pub use simplicial::{barycentric_cone, simpl_chain, SimplicialComplex};
pub use square::{check_square_complex, l_subdivision, subdivision_qubits, SquareAssignment};
pub use toric::{honeycomb_cone, toric, triangular_cone, Boundary, ToricCode};
pub use weight::{
    coning_graph, hastings_cone, triangulate, weight_reduce, x_reduce, z_thicken, ConingGraph, HeightFunction, WeightCheck,
    WeightReduction,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("string defect needs an even number of endpoints, got {0}")]
    OddDefect(usize),
    #[error("not a square complex: generator {a2} and check {a0} share {common} qubits")]
    NotSquare { a2: usize, a0: usize, common: usize },
    #[error("code is not reasonable: generator {} contains the nontrivial cycle {:?}", .0.generator, .0.subset)]
    Unreasonable(ReasonableWitness),
    #[error("coning graph of generator {generator} has {dim} internal logical operators")]
    InternalLogical { generator: usize, dim: usize },
    #[error("height function is not injective: cells {first} and {second} share height {height}")]
    HeightCollision { first: usize, second: usize, height: usize },
    #[error("height {height} of cell {cell} is outside 1..={l}")]
    HeightRange { cell: usize, height: usize, l: usize },
    #[error("{kind} {index} has empty support")]
    EmptyGenerator { kind: &'static str, index: usize },
    #[error("subdivision orientation check failed: {0}")]
    Orientation(String),
    #[error("weight bound violated: {0}")]
    WeightBound(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Css(#[from] CssError),
}

/// A cone plus the based complex its embedded complex should match.
#[derive(Clone, Debug)]
pub struct Construction {
    pub name: String,
    pub spec: ConeSpec,
    /// Expected embedded code.
    pub declared: BasedComplex,
    /// `declared_reps[s]` has one column per cell of `declared` in degree `s`,
    /// written over level `s` at total degree `s`.
    pub declared_reps: Vec<BitMatrix>,
    /// Degrees at which the cone is claimed regular.
    pub regular_degrees: Vec<usize>,
}

/// Outcome of [`Construction::verify`].
#[derive(Clone, Debug)]
pub struct Verification {
    pub total: BasedComplex,
    /// `(m, embedding_iso(m))` for each regular degree.
    pub isomorphisms: Vec<(usize, BitMatrix)>,
}

impl Construction {
    /// Assembles the cone, checks regularity, compares the embedded complex with
    /// the declared code and checks the homology isomorphism at each regular degree.
    ///
    /// # Errors
    ///
    /// Returns the first failing check.
    pub fn verify(&self) -> Result<Verification, ConstructionError> {
        let analysis = self.spec.analyze()?;
        analysis.verify_declared(&self.declared, &self.declared_reps)?;
        let mut isomorphisms = Vec::new();
        for &m in &self.regular_degrees {
            isomorphisms.push((m, analysis.embedding_iso(m)?));
        }
        Ok(Verification {
            total: analysis.total().clone(),
            isomorphisms,
        })
    }

    /// The total complex.
    ///
    /// # Errors
    ///
    /// Fails on chain-condition violations.
    pub fn assemble(&self) -> Result<BasedComplex, ConstructionError> {
        Ok(self.spec.assemble()?)
    }

    /// The total complex read as a CSS code.
    ///
    /// # Errors
    ///
    /// Fails when the total complex is not of length 2.
    pub fn code(&self) -> Result<CssCode, ConstructionError> {
        Ok(CssCode::from_complex(self.assemble()?.padded(2))?)
    }
}

/// Identity representatives for a level concentrated in one degree.
pub(crate) fn identity_reps(n: usize) -> BitMatrix {
    BitMatrix::identity(n)
}

/// Matrix whose column `c` has ones at the labels `image(src[c])` found in `dst`.
/// Unknown labels denote zero; repeated labels cancel.
pub(crate) fn label_matrix<F>(src: &[CellLabel], dst: &BasedComplex, dst_degree: usize, mut image: F) -> BitMatrix
where
    F: FnMut(&CellLabel) -> Vec<CellLabel>,
{
    let mut entries = Vec::new();
    for (c, label) in src.iter().enumerate() {
        for out in image(label) {
            if let Some(r) = dst.index_of(dst_degree, &out) {
                entries.push((r, c));
            }
        }
    }
    BitMatrix::from_entries(dst.dim(dst_degree), src.len(), entries)
}

/// `rows × cols` matrix whose column `c` has ones at `rows_of(c)`; repeats cancel.
pub(crate) fn column_matrix<F>(rows: usize, cols: usize, mut rows_of: F) -> BitMatrix
where
    F: FnMut(usize) -> Vec<usize>,
{
    BitMatrix::from_entries(rows, cols, (0..cols).flat_map(|c| rows_of(c).into_iter().map(move |r| (r, c))).collect::<Vec<_>>())
}

/// A complex concentrated in degree `degree` with the given basis.
pub(crate) fn concentrated(labels: Vec<CellLabel>, degree: usize) -> BasedComplex {
    let mut bases = vec![Vec::new(); degree + 1];
    bases[degree] = labels;
    let diffs = (1..=degree).map(|i| BitMatrix::zeros(bases[i - 1].len(), bases[i].len())).collect();
    BasedComplex::new(bases, diffs).expect("zero differentials are consistent")
}

/// Rejects generators (columns of `∂₂`) and checks (rows of `∂₁`) with empty support.
pub(crate) fn reject_empty(a: &CssCode) -> Result<(), ConstructionError> {
    if let Some(index) = a.h_z().column_weights().iter().position(|&w| w == 0) {
        return Err(ConstructionError::EmptyGenerator { kind: "Z generator", index });
    }
    let d1 = a.complex().diff_ref(1);
    if let Some(index) = (0..d1.rows()).find(|&r| d1.row_weight(r) == 0) {
        return Err(ConstructionError::EmptyGenerator { kind: "X generator", index });
    }
    Ok(())
}
