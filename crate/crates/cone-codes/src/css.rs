//! CSS codes as length-2 chain complexes `C_2 → C_1 → C_0`.
//!
//! Qubits are the cells of `C_1`, Z checks the cells of `C_2` (columns of
//! `∂₂ = H_Z`) and X checks the cells of `C_0` (rows of `∂₁ = H_Xᵀ`).

use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{weights, BasedComplex, CellLabel, ChainError, HomologyData, WeightReport};
use crate::f2linalg::{BitMatrix, BitVec};

/// Largest kernel dimension searched by default.
pub const DEFAULT_DISTANCE_CAP: usize = 24;

/// Largest generator support scanned by [`CssCode::is_reasonable`].
pub const REASONABLE_SUPPORT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CssError {
    #[error("complex has top degree {0}, a CSS code needs exactly 2")]
    Length(usize),
    #[error("X check {x} and Z check {z} overlap on an odd number of qubits")]
    Commutation { x: usize, z: usize },
    #[error("H_X has {hx} rows but H_Z has {hz}; both must equal the qubit count")]
    QubitMismatch { hx: usize, hz: usize },
    #[error("kernel dimension {dim} exceeds the search cap {cap}")]
    Capped { dim: usize, cap: usize },
    #[error("generator {generator} has support {size}, above the cap {cap}")]
    SupportCapped { generator: usize, size: usize, cap: usize },
    #[error("generator index {0} is out of range")]
    Generator(usize),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Which logical operators a distance refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Cycles of `∂₁` modulo boundaries of `∂₂`.
    Z,
    /// Cocycles of `∂₂ᵀ` modulo coboundaries of `∂₁ᵀ`.
    X,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Z => "Z",
            Side::X => "X",
        })
    }
}

/// Result of one distance search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Distance {
    Exact { value: usize },
    /// There is no nontrivial logical operator (`k = 0`).
    NoLogical,
    Capped { kernel_dim: usize, cap: usize },
}

impl Distance {
    #[must_use]
    pub fn value(&self) -> Option<usize> {
        match self {
            Distance::Exact { value } => Some(*value),
            _ => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact { value } => write!(f, "{value}"),
            Distance::NoLogical => f.write_str("inf"),
            Distance::Capped { kernel_dim, cap } => write!(f, "capped (kernel dim {kernel_dim} > {cap})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CssParams {
    pub n: usize,
    pub k: usize,
    pub d_z: Distance,
    pub d_x: Distance,
    pub weights: WeightReport,
}

impl CssParams {
    /// `min(d_Z, d_X)` when both are known.
    #[must_use]
    pub fn d(&self) -> Option<usize> {
        Some(self.d_z.value()?.min(self.d_x.value()?))
    }
}

/// A reasonableness violation: a nontrivial cycle inside one generator's support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReasonableWitness {
    pub generator: usize,
    /// Qubit indices (0-based) of the offending subset.
    pub subset: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CssCode {
    complex: BasedComplex,
    z_homology: HomologyData,
    x_homology: HomologyData,
    cochain: BasedComplex,
}

impl CssCode {
    /// Wraps a validated length-2 complex.
    ///
    /// # Errors
    ///
    /// Fails unless the complex has top degree 2 and satisfies `∂₁∂₂ = 0`.
    pub fn from_complex(complex: BasedComplex) -> Result<Self, CssError> {
        if complex.top_degree() != 2 {
            return Err(CssError::Length(complex.top_degree()));
        }
        if let Some((x, z)) = complex.diff_ref(1).multiply(complex.diff_ref(2)).expect("shapes checked").entries().next() {
            return Err(CssError::Commutation { x, z });
        }
        let cochain = complex.transpose_complex();
        let z_homology = complex.homology(1)?;
        let x_homology = cochain.homology(1)?;
        Ok(Self {
            complex,
            z_homology,
            x_homology,
            cochain,
        })
    }

    /// Complex `F₂^{n_Z} → F₂^n → F₂^{n_X}` with `∂₂ = H_Z`, `∂₁ = H_Xᵀ`.
    ///
    /// # Errors
    ///
    /// Fails on mismatched qubit counts or anticommuting checks.
    pub fn from_parity_checks(h_x: &BitMatrix, h_z: &BitMatrix) -> Result<Self, CssError> {
        if h_x.rows() != h_z.rows() {
            return Err(CssError::QubitMismatch {
                hx: h_x.rows(),
                hz: h_z.rows(),
            });
        }
        let labels = |n: usize| (1..=n as i64).map(CellLabel::Int).collect::<Vec<_>>();
        let complex = BasedComplex::new(
            vec![labels(h_x.cols()), labels(h_x.rows()), labels(h_z.cols())],
            vec![h_x.transpose(), h_z.clone()],
        )?;
        Self::from_complex(complex)
    }

    #[must_use]
    pub fn complex(&self) -> &BasedComplex {
        &self.complex
    }

    #[must_use]
    pub fn into_complex(self) -> BasedComplex {
        self.complex
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.complex.dim(1)
    }

    #[must_use]
    pub fn n_z(&self) -> usize {
        self.complex.dim(2)
    }

    #[must_use]
    pub fn n_x(&self) -> usize {
        self.complex.dim(0)
    }

    #[must_use]
    pub fn k(&self) -> usize {
        self.z_homology.dim()
    }

    /// `H_Z = ∂₂`, one column per Z check.
    #[must_use]
    pub fn h_z(&self) -> &BitMatrix {
        self.complex.diff_ref(2)
    }

    /// `H_X = ∂₁ᵀ`, one column per X check.
    #[must_use]
    pub fn h_x(&self) -> BitMatrix {
        self.complex.diff_ref(1).transpose()
    }

    #[must_use]
    pub fn weights(&self) -> WeightReport {
        weights(&self.complex)
    }

    fn homology(&self, side: Side) -> (&HomologyData, BitMatrix) {
        match side {
            Side::Z => (&self.z_homology, self.complex.diff(1)),
            Side::X => (&self.x_homology, self.cochain.diff(1)),
        }
    }

    /// Representatives of the degree-1 homology (`Z`) or cohomology (`X`); `k` columns.
    #[must_use]
    pub fn logical_reps(&self, side: Side) -> BitMatrix {
        self.homology(side).0.reps().clone()
    }

    /// Whether `v` is a nontrivial logical operator of the given side.
    #[must_use]
    pub fn is_nontrivial_logical(&self, side: Side, v: &BitVec) -> bool {
        let (h, d) = self.homology(side);
        d.mul_vec(v).is_zero() && !h.quotient.coordinate_functional().mul_vec(v).is_zero()
    }

    /// Exact minimum weight of a nontrivial logical operator by exhaustive kernel search.
    ///
    /// # Errors
    ///
    /// Fails with [`CssError::Capped`] when the kernel dimension exceeds `cap`.
    pub fn distance(&self, side: Side, cap: usize) -> Result<Option<usize>, CssError> {
        let threads = thread::available_parallelism().map_or(1, usize::from);
        self.distance_with_threads(side, cap, threads)
    }

    /// As [`CssCode::distance`] on a fixed number of worker threads.
    ///
    /// # Errors
    ///
    /// Fails with [`CssError::Capped`] when the kernel dimension exceeds `cap`.
    pub fn distance_with_threads(&self, side: Side, cap: usize, threads: usize) -> Result<Option<usize>, CssError> {
        let (h, d) = self.homology(side);
        if h.dim() == 0 {
            return Ok(None);
        }
        let kernel = d.kernel_basis();
        if kernel.cols() > cap {
            return Err(CssError::Capped {
                dim: kernel.cols(),
                cap,
            });
        }
        let q = h.quotient.coordinate_functional();
        let basis: Vec<(BitVec, BitVec)> = kernel
            .columns()
            .into_iter()
            .map(|v| {
                let qv = q.mul_vec(&v);
                (v, qv)
            })
            .collect();
        Ok(min_nontrivial_weight(&basis, threads.max(1)))
    }

    /// Distance outcome for both sides together with `n`, `k` and the weights.
    #[must_use]
    pub fn parameters(&self, cap: usize) -> CssParams {
        self.parameters_with_threads(cap, thread::available_parallelism().map_or(1, usize::from))
    }

    #[must_use]
    pub fn parameters_with_threads(&self, cap: usize, threads: usize) -> CssParams {
        let outcome = |side| match self.distance_with_threads(side, cap, threads) {
            Ok(Some(value)) => Distance::Exact { value },
            Ok(None) => Distance::NoLogical,
            Err(CssError::Capped { dim, cap }) => Distance::Capped { kernel_dim: dim, cap },
            Err(e) => unreachable!("distance search only fails by capping: {e}"),
        };
        CssParams {
            n: self.n(),
            k: self.k(),
            d_z: outcome(Side::Z),
            d_x: outcome(Side::X),
            weights: self.weights(),
        }
    }

    /// Searches each listed Z generator's support for a nonzero subset that is a
    /// cycle outside `im ∂₂`. Returns the first witness found, or `None` when the
    /// code is reasonable with respect to the list.
    ///
    /// # Errors
    ///
    /// Fails on unknown generators or supports above [`REASONABLE_SUPPORT_CAP`].
    pub fn is_reasonable(&self, generators: &[usize]) -> Result<Option<ReasonableWitness>, CssError> {
        let d2 = self.h_z();
        let d1 = self.complex.diff_ref(1);
        let q = self.z_homology.quotient.coordinate_functional();
        for &g in generators {
            if g >= d2.cols() {
                return Err(CssError::Generator(g));
            }
            let support: Vec<usize> = d2.column(g).ones_iter().collect();
            if support.len() > REASONABLE_SUPPORT_CAP {
                return Err(CssError::SupportCapped {
                    generator: g,
                    size: support.len(),
                    cap: REASONABLE_SUPPORT_CAP,
                });
            }
            let cols: Vec<(BitVec, BitVec)> = support
                .iter()
                .map(|&qubit| (d1.column(qubit), q.column(qubit)))
                .collect();
            let mut boundary = BitVec::zeros(d1.rows());
            let mut class = BitVec::zeros(q.rows());
            let mut chosen = vec![false; support.len()];
            for step in 1u64..(1u64 << support.len()) {
                let flip = step.trailing_zeros() as usize;
                chosen[flip] = !chosen[flip];
                boundary.xor_assign(&cols[flip].0);
                class.xor_assign(&cols[flip].1);
                if boundary.is_zero() && !class.is_zero() {
                    let subset = support.iter().zip(&chosen).filter(|(_, &c)| c).map(|(&s, _)| s).collect();
                    return Ok(Some(ReasonableWitness { generator: g, subset }));
                }
            }
        }
        Ok(None)
    }
}

/// See [`CssCode::from_parity_checks`].
///
/// # Errors
///
/// Fails on anticommuting checks.
pub fn css_from_parity_checks(h_x: &BitMatrix, h_z: &BitMatrix) -> Result<CssCode, CssError> {
    CssCode::from_parity_checks(h_x, h_z)
}

struct Packed {
    v: Vec<u64>,
    q: Vec<u64>,
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn weight(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Gray-code scan of `prefix + span(basis)`; minimum weight over vectors with nonzero class.
fn scan(basis: &[Packed], mut v: Vec<u64>, mut q: Vec<u64>) -> Option<usize> {
    let mut best = None;
    let consider = |v: &[u64], q: &[u64], best: &mut Option<usize>| {
        if q.iter().any(|&w| w != 0) {
            let w = weight(v);
            if best.is_none_or(|b| w < b) {
                *best = Some(w);
            }
        }
    };
    consider(&v, &q, &mut best);
    for step in 1u64..(1u64 << basis.len()) {
        let b = &basis[step.trailing_zeros() as usize];
        xor_into(&mut v, &b.v);
        xor_into(&mut q, &b.q);
        consider(&v, &q, &mut best);
        if best == Some(1) {
            break;
        }
    }
    best
}

fn min_nontrivial_weight(basis: &[(BitVec, BitVec)], threads: usize) -> Option<usize> {
    let packed: Vec<Packed> = basis
        .iter()
        .map(|(v, q)| Packed {
            v: v.words().to_vec(),
            q: q.words().to_vec(),
        })
        .collect();
    let (vw, qw) = basis.first().map_or((0, 0), |(v, q)| (v.words().len(), q.words().len()));
    let dim = packed.len();
    // Split on the top basis vectors once the scan is large enough to benefit.
    let split = if threads > 1 && dim >= 14 {
        (usize::BITS - (threads * 4 - 1).leading_zeros()) as usize
    } else {
        0
    }
    .min(dim);
    let (low, high) = packed.split_at(dim - split);
    let prefixes: Vec<(Vec<u64>, Vec<u64>)> = (0u64..(1u64 << split))
        .map(|mask| {
            let mut v = vec![0; vw];
            let mut q = vec![0; qw];
            for (j, b) in high.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    xor_into(&mut v, &b.v);
                    xor_into(&mut q, &b.q);
                }
            }
            (v, q)
        })
        .collect();
    if split == 0 {
        let (v, q) = prefixes.into_iter().next().expect("one prefix");
        return scan(low, v, q);
    }
    let chunk = prefixes.len().div_ceil(threads);
    thread::scope(|scope| {
        let handles: Vec<_> = prefixes
            .chunks(chunk)
            .map(|group| {
                scope.spawn(move || {
                    group
                        .iter()
                        .filter_map(|(v, q)| scan(low, v.clone(), q.clone()))
                        .min()
                })
            })
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("distance worker panicked"))
            .min()
    })
}
