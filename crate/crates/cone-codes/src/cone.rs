//! Multi-level mapping cones.
//!
//! A [`ConeSpec`] stacks levels `C^n, …, C^0` and strictly lower-triangular
//! gluing blocks `C^s_i → C^r_{i-1}` (`r < s`). Assembly produces the total
//! complex; [`ConeAnalysis`] computes the embedded complex of level homologies
//! and lifts its classes to total-complex cycles.

use std::collections::BTreeMap;
use std::ops::Range;

use thiserror::Error;

use crate::chain::{BasedComplex, CellLabel, ChainError, HomologyData};
use crate::f2linalg::{BitMatrix, BitVec, Echelon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("level {s} does not exist (cone has {levels} levels)")]
    UnknownLevel { s: usize, levels: usize },
    #[error("block ({r},{s}) is not strictly below the diagonal")]
    NotLowerTriangular { r: usize, s: usize },
    #[error("block ({r},{s}) at degree {i} has shape {found:?}, expected {expected:?}")]
    BlockShape {
        r: usize,
        s: usize,
        i: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("chain condition fails at degree {degree} between levels ({r},{s}), witness cell {cell}")]
    ChainCondition {
        degree: usize,
        r: usize,
        s: usize,
        cell: CellLabel,
    },
    #[error("level {s}: {source}")]
    Level { s: usize, source: ChainError },
    #[error("cone is not regular at degree {m}; nonzero level homology (level, degree, dim): {failing:?}")]
    NotRegular { m: usize, failing: Vec<(usize, usize, usize)> },
    #[error("gluing map g_{s} sends homology representative {class} to a non-cycle")]
    Malformed { s: usize, class: usize },
    #[error("no lift exists at level {level} while lifting a degree-{m} class")]
    LiftFailed { m: usize, level: usize },
    #[error("embedding at degree {m} is {rows}x{cols} with rank {rank}, not an isomorphism")]
    Isomorphism {
        m: usize,
        rows: usize,
        cols: usize,
        rank: usize,
    },
    #[error("declared representatives at level {s}: {reason}")]
    Declared { s: usize, reason: String },
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// One level of a cone: a complex placed so its degree `j` sits at total degree `j + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub complex: BasedComplex,
    pub offset: usize,
}

impl Level {
    #[must_use]
    pub fn new(complex: BasedComplex, offset: usize) -> Self {
        Self { complex, offset }
    }

    /// Dimension at total degree `i`.
    #[must_use]
    pub fn dim(&self, i: usize) -> usize {
        i.checked_sub(self.offset).map_or(0, |j| self.complex.dim(j))
    }

    #[must_use]
    pub fn basis(&self, i: usize) -> &[CellLabel] {
        i.checked_sub(self.offset).map_or(&[], |j| self.complex.basis(j))
    }

    /// Level differential leaving total degree `i`.
    #[must_use]
    pub fn diff(&self, i: usize) -> BitMatrix {
        match i.checked_sub(self.offset) {
            Some(j) if j >= 1 => self.complex.diff(j),
            _ => BitMatrix::zeros(if i == 0 { 0 } else { self.dim(i - 1) }, self.dim(i)),
        }
    }

    #[must_use]
    pub fn top(&self) -> usize {
        self.offset + self.complex.top_degree()
    }

    /// Homology at total degree `i`, or `None` when the level is empty there.
    ///
    /// # Errors
    ///
    /// Propagates chain errors from the level complex.
    pub fn homology(&self, i: usize) -> Result<Option<HomologyData>, ChainError> {
        match i.checked_sub(self.offset) {
            Some(j) if j <= self.complex.top_degree() => self.complex.homology(j).map(Some),
            _ => Ok(None),
        }
    }

    fn betti(&self, i: usize) -> usize {
        if self.dim(i) == 0 {
            return 0;
        }
        let ker = self.dim(i) - self.diff(i).rank();
        ker - self.diff(i + 1).rank()
    }
}

/// Levels `C^0, …, C^n` (indexed by `s`) and gluing blocks keyed by `(r, s, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    levels: Vec<Level>,
    blocks: BTreeMap<(usize, usize, usize), BitMatrix>,
}

impl ConeSpec {
    /// `levels[s]` is `C^s`.
    #[must_use]
    pub fn new(levels: Vec<Level>) -> Self {
        Self {
            levels,
            blocks: BTreeMap::new(),
        }
    }

    /// One-level cone on `c`.
    #[must_use]
    pub fn single(c: BasedComplex) -> Self {
        Self::new(vec![Level::new(c, 0)])
    }

    #[must_use]
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    #[must_use]
    pub fn level(&self, s: usize) -> &Level {
        &self.levels[s]
    }

    #[must_use]
    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    #[must_use]
    pub fn top_degree(&self) -> usize {
        self.levels.iter().map(Level::top).max().unwrap_or(0)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&(usize, usize, usize), &BitMatrix)> {
        self.blocks.iter()
    }

    /// Block `C^s_i → C^r_{i-1}`, if set.
    #[must_use]
    pub fn block(&self, r: usize, s: usize, i: usize) -> Option<&BitMatrix> {
        self.blocks.get(&(r, s, i))
    }

    /// Expected shape of block `(r, s, i)`.
    #[must_use]
    pub fn block_shape(&self, r: usize, s: usize, i: usize) -> (usize, usize) {
        let rows = if i == 0 { 0 } else { self.levels[r].dim(i - 1) };
        (rows, self.levels[s].dim(i))
    }

    /// Sets block `(r, s, i)`; zero blocks are dropped.
    ///
    /// # Errors
    ///
    /// Rejects unknown levels, `r ≥ s` and shape mismatches.
    pub fn set_block(&mut self, r: usize, s: usize, i: usize, m: BitMatrix) -> Result<(), ConeError> {
        let levels = self.levels.len();
        for t in [r, s] {
            if t >= levels {
                return Err(ConeError::UnknownLevel { s: t, levels });
            }
        }
        if r >= s {
            return Err(ConeError::NotLowerTriangular { r, s });
        }
        let expected = self.block_shape(r, s, i);
        if m.shape() != expected {
            return Err(ConeError::BlockShape {
                r,
                s,
                i,
                expected,
                found: m.shape(),
            });
        }
        if m.is_zero() {
            self.blocks.remove(&(r, s, i));
        } else {
            self.blocks.insert((r, s, i), m);
        }
        Ok(())
    }

    /// Sets block `(r, s, i)` from per-column images given as labels of `C^r_{i-1}`.
    ///
    /// `image` receives a cell label of `C^s_i` and returns labels in `C^r_{i-1}`;
    /// labels outside the basis denote zero and repeated labels cancel.
    ///
    /// # Errors
    ///
    /// As for [`ConeSpec::set_block`].
    pub fn set_block_by_labels<F>(&mut self, r: usize, s: usize, i: usize, mut image: F) -> Result<(), ConeError>
    where
        F: FnMut(&CellLabel) -> Vec<CellLabel>,
    {
        if r >= self.levels.len() || s >= self.levels.len() {
            return Err(ConeError::UnknownLevel {
                s: r.max(s),
                levels: self.levels.len(),
            });
        }
        let (rows, cols) = self.block_shape(r, s, i);
        let target = &self.levels[r];
        let mut entries = Vec::new();
        for (c, label) in self.levels[s].basis(i).iter().enumerate() {
            for out in image(label) {
                if let Some(row) = target.offset_index(i - 1, &out) {
                    entries.push((row, c));
                }
            }
        }
        let m = BitMatrix::from_entries(rows, cols, entries);
        self.set_block(r, s, i, m)
    }

    /// Cell range of level `s` inside total degree `i` (levels are listed with `s` descending).
    #[must_use]
    pub fn level_range(&self, i: usize, s: usize) -> Range<usize> {
        let start: usize = self.levels[s + 1..].iter().map(|l| l.dim(i)).sum();
        start..start + self.levels[s].dim(i)
    }

    /// Total dimension at degree `i`.
    #[must_use]
    pub fn total_dim(&self, i: usize) -> usize {
        self.levels.iter().map(|l| l.dim(i)).sum()
    }

    fn total_diff(&self, i: usize) -> BitMatrix {
        let rows = if i == 0 { 0 } else { self.total_dim(i - 1) };
        let mut entries = Vec::new();
        if i >= 1 {
            for s in 0..self.levels.len() {
                let cols = self.level_range(i, s);
                let d = self.levels[s].diff(i);
                let rr = self.level_range(i - 1, s);
                entries.extend(d.entries().map(|(r, c)| (rr.start + r, cols.start + c)));
                for r in 0..s {
                    if let Some(b) = self.block(r, s, i) {
                        let rr = self.level_range(i - 1, r);
                        entries.extend(b.entries().map(|(a, c)| (rr.start + a, cols.start + c)));
                    }
                }
            }
        }
        BitMatrix::from_entries(rows, self.total_dim(i), entries)
    }

    /// The total complex, with cell `x` of level `s` labelled `(^s, x)`.
    ///
    /// # Errors
    ///
    /// Reports the level pair and a witness cell when `∂∂ ≠ 0`.
    pub fn assemble(&self) -> Result<BasedComplex, ConeError> {
        let top = self.top_degree();
        let bases: Vec<Vec<CellLabel>> = (0..=top)
            .map(|i| {
                (0..self.levels.len())
                    .rev()
                    .flat_map(|s| {
                        self.levels[s]
                            .basis(i)
                            .iter()
                            .map(move |x| CellLabel::pair(CellLabel::Level(s as u32), x.clone()))
                    })
                    .collect()
            })
            .collect();
        let diffs: Vec<BitMatrix> = (1..=top).map(|i| self.total_diff(i)).collect();
        let total = BasedComplex::new(bases, diffs)?;
        for i in 2..=top {
            let dd = total.diff_ref(i - 1).multiply(total.diff_ref(i)).map_err(ChainError::from)?;
            if let Some((row, col)) = dd.transpose().entries().next().map(|(c, r)| (r, c)) {
                let s = self.level_of(i, col);
                let r = self.level_of(i - 2, row);
                return Err(ConeError::ChainCondition {
                    degree: i,
                    r,
                    s,
                    cell: total.basis(i)[col].clone(),
                });
            }
        }
        Ok(total)
    }

    fn level_of(&self, i: usize, idx: usize) -> usize {
        (0..self.levels.len())
            .find(|&s| self.level_range(i, s).contains(&idx))
            .expect("index inside the total basis")
    }

    /// Every `(s, i, dim)` with nonzero `H_i(C^s)` that regularity at `m` forbids.
    ///
    /// Regularity requires `H_i(C^s) = 0` for `s < i ≤ m` and for `m ≤ i < s`.
    #[must_use]
    pub fn regularity_failures(&self, m: usize) -> Vec<(usize, usize, usize)> {
        let mut failing = Vec::new();
        for (s, level) in self.levels.iter().enumerate() {
            let degrees: Vec<usize> = if s < m { (s + 1..=m).collect() } else { (m..s).collect() };
            for i in degrees {
                let b = level.betti(i);
                if b > 0 {
                    failing.push((s, i, b));
                }
            }
        }
        failing
    }

    /// # Errors
    ///
    /// Lists every failing `(level, degree, dim)`.
    pub fn check_regular(&self, m: usize) -> Result<(), ConeError> {
        let failing = self.regularity_failures(m);
        if failing.is_empty() {
            Ok(())
        } else {
            Err(ConeError::NotRegular { m, failing })
        }
    }

    /// Shorthand for [`ConeAnalysis::new`].
    ///
    /// # Errors
    ///
    /// See [`ConeAnalysis::new`].
    pub fn analyze(&self) -> Result<ConeAnalysis<'_>, ConeError> {
        ConeAnalysis::new(self)
    }
}

impl Level {
    fn offset_index(&self, i: usize, label: &CellLabel) -> Option<usize> {
        i.checked_sub(self.offset).and_then(|j| self.complex.index_of(j, label))
    }
}

/// Complex of level homologies `H_s(C^s)` with the induced gluing maps.
#[derive(Clone, Debug)]
pub struct EmbeddedComplex {
    pub complex: BasedComplex,
    /// `H_s(C^s)` at total degree `s`, used as the basis of degree `s`.
    pub level_homology: Vec<Option<HomologyData>>,
}

impl EmbeddedComplex {
    /// Representatives of `H_s(C^s)` as columns over level `s` at total degree `s`.
    #[must_use]
    pub fn reps(&self, s: usize, rows: usize) -> BitMatrix {
        self.level_homology[s]
            .as_ref()
            .map_or_else(|| BitMatrix::zeros(rows, 0), |h| h.reps().clone())
    }
}

/// Assembled total complex plus cached level homologies.
#[derive(Clone, Debug)]
pub struct ConeAnalysis<'a> {
    spec: &'a ConeSpec,
    total: BasedComplex,
    embedded: EmbeddedComplex,
}

impl<'a> ConeAnalysis<'a> {
    /// Assembles the cone and computes its embedded complex.
    ///
    /// # Errors
    ///
    /// Fails on chain-condition violations or when a gluing map does not
    /// send level cycles to level cycles.
    pub fn new(spec: &'a ConeSpec) -> Result<Self, ConeError> {
        let total = spec.assemble()?;
        let embedded = embedded_complex(spec)?;
        Ok(Self { spec, total, embedded })
    }

    #[must_use]
    pub fn spec(&self) -> &ConeSpec {
        self.spec
    }

    #[must_use]
    pub fn total(&self) -> &BasedComplex {
        &self.total
    }

    #[must_use]
    pub fn embedded(&self) -> &EmbeddedComplex {
        &self.embedded
    }

    /// Prepares the level solvers used to lift degree-`m` classes.
    ///
    /// # Errors
    ///
    /// Fails when the cone is not regular at `m`.
    pub fn lifter(&self, m: usize) -> Result<Lifter<'_>, ConeError> {
        self.spec.check_regular(m)?;
        let classes = self.embedded.complex.homology(m)?;
        let solvers = (0..m.min(self.spec.num_levels()))
            .map(|r| Echelon::new(&self.spec.level(r).diff(m)))
            .collect();
        Ok(Lifter {
            analysis: self,
            m,
            classes,
            solvers,
        })
    }

    /// Total-complex cycle representing the embedded class with the given coordinates.
    ///
    /// # Errors
    ///
    /// Fails when the cone is not regular at `m`.
    pub fn lift_class(&self, m: usize, class_coords: &BitVec) -> Result<BitVec, ConeError> {
        self.lifter(m)?.lift(class_coords)
    }

    /// Matrix whose column `j` is the total-homology class of the lift of basis class `j`.
    ///
    /// # Errors
    ///
    /// Fails unless the result is square and invertible.
    pub fn embedding_iso(&self, m: usize) -> Result<BitMatrix, ConeError> {
        let lifter = self.lifter(m)?;
        let k = lifter.classes.dim();
        let ht = self.total.homology(m)?;
        let mut cols = Vec::with_capacity(k);
        for j in 0..k {
            let z = lifter.lift(&BitVec::unit(k, j))?;
            cols.push(ht.project(&self.total, &z)?);
        }
        let iso = BitMatrix::from_columns(ht.dim(), &cols);
        let rank = iso.rank();
        if iso.rows() != iso.cols() || rank != iso.rows() {
            return Err(ConeError::Isomorphism {
                m,
                rows: iso.rows(),
                cols: iso.cols(),
                rank,
            });
        }
        Ok(iso)
    }

    /// Checks that `reps[s]` (columns over level `s` at total degree `s`) project to a basis
    /// of `H_s(C^s)` under which the induced maps equal the differentials of `declared`.
    ///
    /// # Errors
    ///
    /// Names the first level whose representatives or induced map disagree.
    pub fn verify_declared(&self, declared: &BasedComplex, reps: &[BitMatrix]) -> Result<(), ConeError> {
        let spec = self.spec;
        let n = spec.num_levels();
        let declared_fail = |s: usize, reason: String| ConeError::Declared { s, reason };
        if reps.len() != n {
            return Err(declared_fail(0, format!("expected {n} representative sets, found {}", reps.len())));
        }
        let mut projections = Vec::with_capacity(n);
        for (s, rep) in reps.iter().enumerate() {
            let rows = spec.level(s).dim(s);
            if rep.shape() != (rows, declared.dim(s)) {
                return Err(declared_fail(
                    s,
                    format!("shape {:?}, expected {:?}", rep.shape(), (rows, declared.dim(s))),
                ));
            }
            let p = self.project_level(s, rep)?;
            if p.rows() != p.cols() || p.rank() != p.rows() {
                return Err(declared_fail(
                    s,
                    format!("they project to a {}x{} matrix of rank {}, not a basis", p.rows(), p.cols(), p.rank()),
                ));
            }
            projections.push(p);
        }
        for s in 1..n {
            let g = self.embedded.complex.diff(s);
            let lhs = projections[s - 1].multiply(&declared.diff(s)).map_err(ChainError::from)?;
            let rhs = g.multiply(&projections[s]).map_err(ChainError::from)?;
            if lhs != rhs {
                return Err(declared_fail(s, "induced gluing map differs from the declared differential".into()));
            }
        }
        Ok(())
    }

    /// Coordinates in `H_s(C^s)` of each column of `vectors`.
    fn project_level(&self, s: usize, vectors: &BitMatrix) -> Result<BitMatrix, ConeError> {
        let level = self.spec.level(s);
        match &self.embedded.level_homology[s] {
            Some(h) => {
                let cols = vectors
                    .columns()
                    .iter()
                    .map(|v| h.project(&level.complex, v))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|source| ConeError::Level { s, source })?;
                Ok(BitMatrix::from_columns(h.dim(), &cols))
            }
            None => Ok(BitMatrix::zeros(0, vectors.cols())),
        }
    }
}

/// Cached solvers for lifting embedded classes of one degree.
#[derive(Clone, Debug)]
pub struct Lifter<'a> {
    analysis: &'a ConeAnalysis<'a>,
    m: usize,
    classes: HomologyData,
    solvers: Vec<Echelon>,
}

impl Lifter<'_> {
    /// Dimension of `H_m` of the embedded complex.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.classes.dim()
    }

    /// Lifts the class with coordinates `class_coords` in the embedded homology basis.
    ///
    /// # Errors
    ///
    /// Fails on a length mismatch or when a level equation has no solution.
    pub fn lift(&self, class_coords: &BitVec) -> Result<BitVec, ConeError> {
        if class_coords.len() != self.dim() {
            return Err(ChainError::Length {
                degree: self.m,
                expected: self.dim(),
                found: class_coords.len(),
            }
            .into());
        }
        let e = self.classes.reps().mul_vec(class_coords);
        self.lift_level_class(&e)
    }

    /// Lifts a cycle of the embedded complex, given in `H_m(C^m)` coordinates.
    ///
    /// # Errors
    ///
    /// Fails when some level equation has no solution.
    pub fn lift_level_class(&self, e: &BitVec) -> Result<BitVec, ConeError> {
        let m = self.m;
        let spec = self.analysis.spec;
        let n = spec.num_levels();
        let mut parts: Vec<BitVec> = (0..n).map(|s| BitVec::zeros(spec.level(s).dim(m))).collect();
        if m < n {
            parts[m] = self.analysis.embedded.reps(m, spec.level(m).dim(m)).mul_vec(e);
            for r in (0..m).rev() {
                let mut rhs = BitVec::zeros(spec.level(r).dim(m - 1));
                for (s, part) in parts.iter().enumerate().take(m + 1).skip(r + 1) {
                    if let Some(b) = spec.block(r, s, m) {
                        rhs.xor_assign(&b.mul_vec(part));
                    }
                }
                parts[r] = self.solvers[r].solve(&rhs).ok_or(ConeError::LiftFailed { m, level: r })?;
            }
        }
        let mut z = BitVec::zeros(spec.total_dim(m));
        for (s, part) in parts.iter().enumerate() {
            let start = spec.level_range(m, s).start;
            for k in part.ones_iter() {
                z.set(start + k, true);
            }
        }
        Ok(z)
    }
}

/// Builds the complex `… → H_s(C^s) → H_{s-1}(C^{s-1}) → …` with maps induced by `g_s`.
///
/// # Errors
///
/// Fails when a gluing map sends a representative to a non-cycle.
pub fn embedded_complex(spec: &ConeSpec) -> Result<EmbeddedComplex, ConeError> {
    let n = spec.num_levels();
    let mut level_homology = Vec::with_capacity(n);
    for (s, level) in spec.levels().iter().enumerate() {
        level_homology.push(level.homology(s).map_err(|source| ConeError::Level { s, source })?);
    }
    let dims: Vec<usize> = level_homology.iter().map(|h| h.as_ref().map_or(0, HomologyData::dim)).collect();
    let bases: Vec<Vec<CellLabel>> = dims
        .iter()
        .enumerate()
        .map(|(s, &d)| {
            (0..d)
                .map(|j| CellLabel::pair(CellLabel::Level(s as u32), CellLabel::Int(j as i64)))
                .collect()
        })
        .collect();
    let mut diffs = Vec::with_capacity(n.saturating_sub(1));
    for s in 1..n {
        let mut cols = Vec::with_capacity(dims[s]);
        if let Some(hs) = &level_homology[s] {
            for (class, rep) in hs.reps().columns().iter().enumerate() {
                let image = match spec.block(s - 1, s, s) {
                    Some(g) => g.mul_vec(rep),
                    None => BitVec::zeros(spec.level(s - 1).dim(s - 1)),
                };
                let coords = match &level_homology[s - 1] {
                    Some(h) => h
                        .project(&spec.level(s - 1).complex, &image)
                        .map_err(|_| ConeError::Malformed { s, class })?,
                    None => BitVec::zeros(0),
                };
                cols.push(coords);
            }
        }
        diffs.push(BitMatrix::from_columns(dims[s - 1], &cols));
    }
    let complex = BasedComplex::new(bases, diffs)?;
    Ok(EmbeddedComplex {
        complex,
        level_homology,
    })
}

/// See [`ConeSpec::assemble`].
///
/// # Errors
///
/// Reports chain-condition failures.
pub fn assemble(spec: &ConeSpec) -> Result<BasedComplex, ConeError> {
    spec.assemble()
}

/// See [`ConeSpec::check_regular`].
///
/// # Errors
///
/// Lists the failing level homologies.
pub fn check_regular(spec: &ConeSpec, m: usize) -> Result<(), ConeError> {
    spec.check_regular(m)
}

/// See [`ConeAnalysis::lift_class`].
///
/// # Errors
///
/// Fails on non-regular cones or malformed gluing.
pub fn lift_class(spec: &ConeSpec, m: usize, class_coords: &BitVec) -> Result<BitVec, ConeError> {
    spec.analyze()?.lift_class(m, class_coords)
}

/// See [`ConeAnalysis::embedding_iso`].
///
/// # Errors
///
/// Fails unless the embedding is an isomorphism.
pub fn embedding_iso(spec: &ConeSpec, m: usize) -> Result<BitMatrix, ConeError> {
    spec.analyze()?.embedding_iso(m)
}
