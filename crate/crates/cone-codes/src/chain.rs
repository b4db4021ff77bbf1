//! Based chain complexes over F2.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::f2linalg::{quotient_basis, BitMatrix, BitVec, Echelon, LinalgError, QuotientBasis};

/// Structured, totally ordered basis label.
///
/// Half-integer coordinates are stored doubled: `i` is `Coord(2i)` and
/// `i⁺ = i + 1/2` is `Coord(2i + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellLabel {
    Int(i64),
    Coord(i64),
    Atom(String),
    Level(u32),
    Tuple(Vec<CellLabel>),
}

impl CellLabel {
    /// The integer coordinate `i`.
    #[must_use]
    pub fn whole(i: i64) -> Self {
        Self::Coord(2 * i)
    }

    /// The half-integer coordinate `i⁺`.
    #[must_use]
    pub fn half(i: i64) -> Self {
        Self::Coord(2 * i + 1)
    }

    #[must_use]
    pub fn atom(name: &str) -> Self {
        Self::Atom(name.to_owned())
    }

    #[must_use]
    pub fn pair(a: CellLabel, b: CellLabel) -> Self {
        Self::Tuple(vec![a, b])
    }

    /// Doubled coordinate value, if this is a coordinate.
    #[must_use]
    pub fn coord(&self) -> Option<i64> {
        match self {
            Self::Coord(c) => Some(*c),
            _ => None,
        }
    }

    #[must_use]
    pub fn parts(&self) -> Option<&[CellLabel]> {
        match self {
            Self::Tuple(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Int(i) => write!(f, "{i}"),
            Self::Coord(c) => {
                if c.rem_euclid(2) == 0 {
                    write!(f, "~{}", c.div_euclid(2))
                } else {
                    write!(f, "~{}+", c.div_euclid(2))
                }
            }
            Self::Atom(a) => write!(f, "${a}"),
            Self::Level(s) => write!(f, "^{s}"),
            Self::Tuple(items) => {
                write!(f, "(")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed cell label {input:?} at byte {at}")]
pub struct LabelParseError {
    pub input: String,
    pub at: usize,
}

struct LabelParser<'a> {
    src: &'a str,
    pos: usize,
}

impl LabelParser<'_> {
    fn fail(&self) -> LabelParseError {
        LabelParseError {
            input: self.src.to_owned(),
            at: self.pos,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(&pred) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<i64, LabelParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        self.take_while(|b| b.is_ascii_digit());
        self.src[start..self.pos].parse().map_err(|_| LabelParseError {
            input: self.src.to_owned(),
            at: start,
        })
    }

    fn label(&mut self) -> Result<CellLabel, LabelParseError> {
        match self.peek().ok_or_else(|| self.fail())? {
            b'~' => {
                self.pos += 1;
                let i = self.integer()?;
                if self.peek() == Some(b'+') {
                    self.pos += 1;
                    Ok(CellLabel::half(i))
                } else {
                    Ok(CellLabel::whole(i))
                }
            }
            b'$' => {
                self.pos += 1;
                let name = self.take_while(|b| !matches!(b, b',' | b'(' | b')'));
                if name.is_empty() {
                    return Err(self.fail());
                }
                Ok(CellLabel::Atom(name.to_owned()))
            }
            b'^' => {
                self.pos += 1;
                let start = self.pos;
                let digits = self.take_while(|b| b.is_ascii_digit());
                digits.parse().map(CellLabel::Level).map_err(|_| LabelParseError {
                    input: self.src.to_owned(),
                    at: start,
                })
            }
            b'(' => {
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    return Ok(CellLabel::Tuple(items));
                }
                loop {
                    items.push(self.label()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(CellLabel::Tuple(items));
                        }
                        _ => return Err(self.fail()),
                    }
                }
            }
            _ => self.integer().map(CellLabel::Int),
        }
    }
}

impl FromStr for CellLabel {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = LabelParser { src: s, pos: 0 };
        let label = p.label()?;
        if p.pos != s.len() {
            return Err(p.fail());
        }
        Ok(label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("differential at degree {degree} has shape {found:?}, expected {expected:?}")]
    Shape {
        degree: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("expected {expected} differentials for {degrees} degrees, found {found}")]
    DiffCount {
        degrees: usize,
        expected: usize,
        found: usize,
    },
    #[error("label {label} appears twice in degree {degree}")]
    DuplicateLabel { degree: usize, label: CellLabel },
    #[error("boundary of boundary is nonzero at degree {degree}, witness cell {cell}")]
    NotAComplex { degree: usize, cell: usize },
    #[error("degree {degree} is outside 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("vector has length {found}, degree {degree} has dimension {expected}")]
    Length {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("vector is not a cycle in degree {degree}; its boundary is supported on {boundary:?}")]
    NotACycle { degree: usize, boundary: Vec<usize> },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A finite chain complex `C_top → … → C_0` with labelled bases.
#[derive(Clone, PartialEq, Eq)]
pub struct BasedComplex {
    bases: Vec<Vec<CellLabel>>,
    diffs: Vec<BitMatrix>,
    index: Vec<HashMap<CellLabel, usize>>,
}

impl fmt::Debug for BasedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasedComplex").field("dims", &self.dims()).finish()
    }
}

impl BasedComplex {
    /// Builds a complex; `diffs[i - 1]` is `∂_i`. The chain condition is not checked here.
    ///
    /// # Errors
    ///
    /// Fails on inconsistent shapes or repeated labels within a degree.
    pub fn new(bases: Vec<Vec<CellLabel>>, diffs: Vec<BitMatrix>) -> Result<Self, ChainError> {
        let degrees = bases.len().max(1);
        let mut bases = bases;
        if bases.is_empty() {
            bases.push(Vec::new());
        }
        if diffs.len() != degrees - 1 {
            return Err(ChainError::DiffCount {
                degrees,
                expected: degrees - 1,
                found: diffs.len(),
            });
        }
        for (k, d) in diffs.iter().enumerate() {
            let expected = (bases[k].len(), bases[k + 1].len());
            if d.shape() != expected {
                return Err(ChainError::Shape {
                    degree: k + 1,
                    expected,
                    found: d.shape(),
                });
            }
        }
        let mut index = Vec::with_capacity(bases.len());
        for (degree, basis) in bases.iter().enumerate() {
            let mut map = HashMap::with_capacity(basis.len());
            for (k, label) in basis.iter().enumerate() {
                if map.insert(label.clone(), k).is_some() {
                    return Err(ChainError::DuplicateLabel {
                        degree,
                        label: label.clone(),
                    });
                }
            }
            index.push(map);
        }
        Ok(Self { bases, diffs, index })
    }

    /// A complex concentrated in degree 0.
    #[must_use]
    pub fn point(labels: Vec<CellLabel>) -> Self {
        Self::new(vec![labels], Vec::new()).expect("single degree is always consistent")
    }

    /// A length-1 complex `C_1 → C_0`.
    ///
    /// # Errors
    ///
    /// Fails on inconsistent shapes or repeated labels.
    pub fn length_one(c1: Vec<CellLabel>, c0: Vec<CellLabel>, d: BitMatrix) -> Result<Self, ChainError> {
        Self::new(vec![c0, c1], vec![d])
    }

    #[must_use]
    pub fn top_degree(&self) -> usize {
        self.bases.len() - 1
    }

    /// Dimension of `C_i`; zero outside the stored range.
    #[must_use]
    pub fn dim(&self, i: usize) -> usize {
        self.bases.get(i).map_or(0, Vec::len)
    }

    #[must_use]
    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Basis of `C_i`; empty outside the stored range.
    #[must_use]
    pub fn basis(&self, i: usize) -> &[CellLabel] {
        self.bases.get(i).map_or(&[], Vec::as_slice)
    }

    #[must_use]
    pub fn bases(&self) -> &[Vec<CellLabel>] {
        &self.bases
    }

    #[must_use]
    pub fn index_of(&self, i: usize, label: &CellLabel) -> Option<usize> {
        self.index.get(i).and_then(|m| m.get(label).copied())
    }

    /// `∂_i : C_i → C_{i-1}`; the zero map when either side is outside the stored range.
    #[must_use]
    pub fn diff(&self, i: usize) -> BitMatrix {
        if i >= 1 && i <= self.top_degree() {
            self.diffs[i - 1].clone()
        } else {
            BitMatrix::zeros(if i == 0 { 0 } else { self.dim(i - 1) }, self.dim(i))
        }
    }

    /// Reference to a stored differential, `1 ≤ i ≤ top`.
    #[must_use]
    pub fn diff_ref(&self, i: usize) -> &BitMatrix {
        &self.diffs[i - 1]
    }

    #[must_use]
    pub fn diffs(&self) -> &[BitMatrix] {
        &self.diffs
    }

    /// Same complex with zero spaces appended up to degree `top`.
    #[must_use]
    pub fn padded(&self, top: usize) -> Self {
        let mut out = self.clone();
        while out.top_degree() < top {
            let d = out.dim(out.top_degree());
            out.diffs.push(BitMatrix::zeros(d, 0));
            out.bases.push(Vec::new());
            out.index.push(HashMap::new());
        }
        out
    }

    /// Checks `∂_{i-1} ∂_i = 0` for every degree.
    ///
    /// # Errors
    ///
    /// Reports the lowest failing degree `i` and the first cell of `C_i` whose double boundary is nonzero.
    pub fn validate(&self) -> Result<(), ChainError> {
        for i in 2..=self.top_degree() {
            let dd = self.diffs[i - 2].multiply(&self.diffs[i - 1])?;
            if let Some(cell) = dd.column_weights().iter().position(|&w| w > 0) {
                return Err(ChainError::NotAComplex { degree: i, cell });
            }
        }
        Ok(())
    }

    fn check_degree(&self, i: usize) -> Result<(), ChainError> {
        if i > self.top_degree() {
            return Err(ChainError::DegreeOutOfRange {
                degree: i,
                top: self.top_degree(),
            });
        }
        Ok(())
    }

    /// `H_i = ker ∂_i / im ∂_{i+1}` with representatives.
    ///
    /// # Errors
    ///
    /// Fails when `i` is out of range or the complex violates the chain condition at `i`.
    pub fn homology(&self, i: usize) -> Result<HomologyData, ChainError> {
        self.check_degree(i)?;
        let cycles = if i == 0 {
            BitMatrix::identity(self.dim(0))
        } else {
            self.diffs[i - 1].kernel_basis()
        };
        let boundaries = self.diff(i + 1);
        let quotient = quotient_basis(&cycles, &boundaries)?;
        Ok(HomologyData { degree: i, quotient })
    }

    /// Dimensions of every homology group.
    ///
    /// # Errors
    ///
    /// Propagates chain-condition failures.
    pub fn betti(&self) -> Result<Vec<usize>, ChainError> {
        (0..=self.top_degree())
            .map(|i| {
                let ker = self.dim(i) - self.diff(i).rank();
                let im = self.diff(i + 1).rank();
                ker.checked_sub(im).ok_or(ChainError::NotAComplex { degree: i + 1, cell: 0 })
            })
            .collect()
    }

    /// Coordinates of `[z]` in the basis chosen by [`BasedComplex::homology`].
    ///
    /// # Errors
    ///
    /// Fails with a not-a-cycle error carrying the support of `∂z`.
    pub fn project_to_homology(&self, i: usize, z: &BitVec) -> Result<BitVec, ChainError> {
        self.homology(i)?.project(self, z)
    }

    /// Support of `∂_i` applied to cell `cell`.
    #[must_use]
    pub fn boundary_of(&self, i: usize, cell: usize) -> Vec<usize> {
        if i == 0 || i > self.top_degree() {
            return Vec::new();
        }
        let d = &self.diffs[i - 1];
        (0..d.rows()).filter(|&r| d.get(r, cell)).collect()
    }

    /// The cochain complex, with degree `i` relabelled `top − i`.
    #[must_use]
    pub fn transpose_complex(&self) -> Self {
        let top = self.top_degree();
        let bases: Vec<Vec<CellLabel>> = self.bases.iter().rev().cloned().collect();
        let diffs: Vec<BitMatrix> = (1..=top).map(|j| self.diffs[top - j].transpose()).collect();
        let index = self.index.iter().rev().cloned().collect();
        Self { bases, diffs, index }
    }

    /// [`weights`] of this complex.
    #[must_use]
    pub fn weights(&self) -> WeightReport {
        weights(self)
    }

    /// Cells of degree `target` reachable from `cell` in degree `degree` through
    /// adjacency in consecutive degrees.
    ///
    /// # Errors
    ///
    /// Fails when either degree is out of range.
    pub fn supports(&self, degree: usize, cell: usize, target: usize) -> Result<BTreeSet<usize>, ChainError> {
        self.check_degree(degree)?;
        self.check_degree(target)?;
        let mut current: BTreeSet<usize> = BTreeSet::from([cell]);
        let mut d = degree;
        while d != target {
            let mut next = BTreeSet::new();
            if target < d {
                let m = &self.diffs[d - 1];
                for &c in &current {
                    next.extend((0..m.rows()).filter(|&r| m.get(r, c)));
                }
                d -= 1;
            } else {
                let m = &self.diffs[d];
                for &c in &current {
                    next.extend(m.row_ones(c));
                }
                d += 1;
            }
            current = next;
        }
        Ok(current)
    }

    /// Common qubits `c₂ ∧ c₀ = supp₁(c₂) ∩ supp₁(c₀)`.
    ///
    /// # Errors
    ///
    /// Fails unless the complex reaches degree 2.
    pub fn common_support(&self, c2: usize, c0: usize) -> Result<BTreeSet<usize>, ChainError> {
        let a = self.supports(2, c2, 1)?;
        let b = self.supports(0, c0, 1)?;
        Ok(a.intersection(&b).copied().collect())
    }
}

/// Homology in one degree.
#[derive(Clone, Debug)]
pub struct HomologyData {
    pub degree: usize,
    pub quotient: QuotientBasis,
}

impl HomologyData {
    #[must_use]
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cycle representatives as columns.
    #[must_use]
    pub fn reps(&self) -> &BitMatrix {
        self.quotient.cocycle_reps()
    }

    /// Coordinates of `[z]`.
    ///
    /// # Errors
    ///
    /// Fails when `z` has the wrong length or is not a cycle of `c`.
    pub fn project(&self, c: &BasedComplex, z: &BitVec) -> Result<BitVec, ChainError> {
        let i = self.degree;
        if z.len() != c.dim(i) {
            return Err(ChainError::Length {
                degree: i,
                expected: c.dim(i),
                found: z.len(),
            });
        }
        self.quotient.coordinates(z).map_err(|_| ChainError::NotACycle {
            degree: i,
            boundary: c.diff(i).mul_vec(z).ones_iter().collect(),
        })
    }
}

/// CSS weights read off degrees 2, 1, 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct WeightReport {
    pub w_z: usize,
    pub w_x: usize,
    pub q_z: usize,
    pub q_x: usize,
}

/// `w_Z`, `q_Z` from the columns and rows of `∂₂`; `w_X`, `q_X` from the rows and columns of `∂₁`.
#[must_use]
pub fn weights(c: &BasedComplex) -> WeightReport {
    let d2 = c.diff(2);
    let d1 = c.diff(1);
    WeightReport {
        w_z: d2.max_column_weight(),
        q_z: d2.max_row_weight(),
        w_x: d1.max_row_weight(),
        q_x: d1.max_column_weight(),
    }
}

/// See [`BasedComplex::validate`].
///
/// # Errors
///
/// Reports the failing degree and a witness cell.
pub fn validate(c: &BasedComplex) -> Result<(), ChainError> {
    c.validate()
}

/// See [`BasedComplex::homology`].
///
/// # Errors
///
/// Fails when `i` is out of range.
pub fn homology(c: &BasedComplex, i: usize) -> Result<HomologyData, ChainError> {
    c.homology(i)
}

/// See [`BasedComplex::project_to_homology`].
///
/// # Errors
///
/// Fails when `z` is not a cycle.
pub fn project_to_homology(c: &BasedComplex, i: usize, z: &BitVec) -> Result<BitVec, ChainError> {
    c.project_to_homology(i, z)
}

#[must_use]
pub fn transpose_complex(c: &BasedComplex) -> BasedComplex {
    c.transpose_complex()
}

/// Tensor product. Degree `m` lists the blocks `C_p ⊗ D_{m−p}` with `p`
/// descending, each block ordered by the `C` cell and then the `D` cell.
///
/// # Errors
///
/// Fails only if the factor labels collide after pairing.
pub fn tensor(c: &BasedComplex, d: &BasedComplex) -> Result<BasedComplex, ChainError> {
    let top = c.top_degree() + d.top_degree();
    let blocks_of = |m: usize| -> Vec<usize> {
        let hi = m.min(c.top_degree());
        let lo = m.saturating_sub(d.top_degree());
        (lo..=hi).rev().collect()
    };
    let mut offsets: Vec<HashMap<usize, usize>> = Vec::with_capacity(top + 1);
    let mut bases = Vec::with_capacity(top + 1);
    for m in 0..=top {
        let mut off = HashMap::new();
        let mut basis = Vec::new();
        for p in blocks_of(m) {
            off.insert(p, basis.len());
            for a in c.basis(p) {
                for b in d.basis(m - p) {
                    basis.push(CellLabel::pair(a.clone(), b.clone()));
                }
            }
        }
        offsets.push(off);
        bases.push(basis);
    }
    let mut diffs = Vec::with_capacity(top);
    for m in 1..=top {
        let mut entries = Vec::new();
        for p in blocks_of(m) {
            let q = m - p;
            let src = offsets[m][&p];
            let dq = d.dim(q);
            if p >= 1 {
                if let Some(&dst) = offsets[m - 1].get(&(p - 1)) {
                    let dc = c.diff_ref(p);
                    for (r, col) in dc.entries() {
                        for y in 0..dq {
                            entries.push((dst + r * dq + y, src + col * dq + y));
                        }
                    }
                }
            }
            if q >= 1 {
                if let Some(&dst) = offsets[m - 1].get(&p) {
                    let dd = d.diff_ref(q);
                    let dq1 = d.dim(q - 1);
                    for x in 0..c.dim(p) {
                        for (r, col) in dd.entries() {
                            entries.push((dst + x * dq1 + r, src + x * dq + col));
                        }
                    }
                }
            }
        }
        diffs.push(BitMatrix::from_entries(bases[m - 1].len(), bases[m].len(), entries));
    }
    BasedComplex::new(bases, diffs)
}

/// Block-diagonal direct sum; cell `x` of the part tagged `t` becomes `(x, t)`.
///
/// # Errors
///
/// Fails if two parts share a tag and a label.
pub fn direct_sum(parts: &[(CellLabel, BasedComplex)]) -> Result<BasedComplex, ChainError> {
    let top = parts.iter().map(|(_, c)| c.top_degree()).max().unwrap_or(0);
    let mut bases = vec![Vec::new(); top + 1];
    let mut offsets = vec![vec![0usize; top + 1]; parts.len()];
    for (k, (tag, c)) in parts.iter().enumerate() {
        for (i, basis) in bases.iter_mut().enumerate() {
            offsets[k][i] = basis.len();
            basis.extend(c.basis(i).iter().map(|x| CellLabel::pair(x.clone(), tag.clone())));
        }
    }
    let mut diffs = Vec::with_capacity(top);
    for i in 1..=top {
        let mut entries = Vec::new();
        for (k, (_, c)) in parts.iter().enumerate() {
            if i <= c.top_degree() {
                let (r0, c0) = (offsets[k][i - 1], offsets[k][i]);
                entries.extend(c.diff_ref(i).entries().map(|(r, col)| (r0 + r, c0 + col)));
            }
        }
        diffs.push(BitMatrix::from_entries(bases[i - 1].len(), bases[i].len(), entries));
    }
    BasedComplex::new(bases, diffs)
}

/// Outcome of comparing `H(C ⊗ D)` against the Künneth prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub tensor_betti: Vec<usize>,
    pub predicted: Vec<usize>,
}

impl KunnethReport {
    #[must_use]
    pub fn ok(&self) -> bool {
        self.tensor_betti == self.predicted
    }
}

/// Computes both sides of the Künneth formula independently.
///
/// # Errors
///
/// Propagates failures of either factor.
pub fn kunneth_check(c: &BasedComplex, d: &BasedComplex) -> Result<KunnethReport, ChainError> {
    let bc = c.betti()?;
    let bd = d.betti()?;
    let t = tensor(c, d)?;
    let tensor_betti = t.betti()?;
    let mut predicted = vec![0; t.top_degree() + 1];
    for (i, x) in bc.iter().enumerate() {
        for (j, y) in bd.iter().enumerate() {
            predicted[i + j] += x * y;
        }
    }
    Ok(KunnethReport {
        tensor_betti,
        predicted,
    })
}

/// Solver for repeated boundary equations `∂_i x = b` in a fixed degree.
#[derive(Clone, Debug)]
pub struct BoundarySolver {
    echelon: Echelon,
}

impl BoundarySolver {
    #[must_use]
    pub fn new(c: &BasedComplex, i: usize) -> Self {
        Self {
            echelon: Echelon::new(&c.diff(i)),
        }
    }

    #[must_use]
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        self.echelon.solve(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyclic(l: i64) -> BasedComplex {
        let n = l as usize;
        BasedComplex::new(
            vec![
                (1..=l).map(CellLabel::whole).collect(),
                (1..=l).map(CellLabel::half).collect(),
            ],
            vec![BitMatrix::from_entries(n, n, (0..n).flat_map(|i| [(i, i), ((i + 1) % n, i)]))],
        )
        .unwrap()
    }

    fn path(l: usize) -> BasedComplex {
        BasedComplex::new(
            vec![
                (1..=l as i64).map(CellLabel::whole).collect(),
                (1..l as i64).map(CellLabel::half).collect(),
            ],
            vec![BitMatrix::from_entries(l, l - 1, (0..l - 1).flat_map(|i| [(i, i), (i + 1, i)]))],
        )
        .unwrap()
    }

    fn ints(n: usize) -> Vec<CellLabel> {
        (0..n as i64).map(CellLabel::Int).collect()
    }

    #[test]
    fn label_text_round_trips() {
        let labels = [
            CellLabel::Int(-3),
            CellLabel::whole(4),
            CellLabel::half(-1),
            CellLabel::atom("chord"),
            CellLabel::Level(2),
            CellLabel::Tuple(vec![]),
            CellLabel::Tuple(vec![CellLabel::Level(1), CellLabel::pair(CellLabel::half(2), CellLabel::Int(7))]),
        ];
        for l in labels {
            assert_eq!(l.to_string().parse::<CellLabel>().unwrap(), l);
        }
        assert_eq!(CellLabel::half(2).to_string(), "~2+");
        assert!("(1,".parse::<CellLabel>().is_err());
        assert!("~x".parse::<CellLabel>().is_err());
    }

    #[test]
    fn half_integer_order() {
        assert!(CellLabel::whole(1) < CellLabel::half(1));
        assert!(CellLabel::half(1) < CellLabel::whole(2));
    }

    #[test]
    fn double_identity_is_rejected() {
        let c = BasedComplex::new(vec![ints(2), ints(2), ints(2)], vec![BitMatrix::identity(2), BitMatrix::identity(2)]).unwrap();
        assert_eq!(c.validate(), Err(ChainError::NotAComplex { degree: 2, cell: 0 }));
    }

    #[test]
    fn shape_and_label_errors() {
        let err = BasedComplex::new(vec![ints(2), ints(3)], vec![BitMatrix::zeros(3, 2)]).unwrap_err();
        assert!(matches!(err, ChainError::Shape { degree: 1, .. }));
        let err = BasedComplex::new(vec![vec![CellLabel::Int(1), CellLabel::Int(1)]], vec![]).unwrap_err();
        assert!(matches!(err, ChainError::DuplicateLabel { degree: 0, .. }));
    }

    #[test]
    fn repetition_homology() {
        let r = path(4).padded(2);
        r.validate().unwrap();
        assert_eq!(r.betti().unwrap(), vec![1, 0, 0]);
        let h = cyclic(4).homology(1).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.reps().column(0), BitVec::ones(4));
    }

    #[test]
    fn projection_examples() {
        let c = cyclic(4);
        assert_eq!(c.project_to_homology(1, &BitVec::ones(4)).unwrap(), BitVec::ones(1));
        let err = c.project_to_homology(1, &BitVec::unit(4, 0)).unwrap_err();
        assert_eq!(err, ChainError::NotACycle { degree: 1, boundary: vec![0, 1] });
        let t = tensor(&cyclic(3), &cyclic(3)).unwrap();
        let d2 = t.diff(2);
        for col in 0..d2.cols() {
            assert!(t.project_to_homology(1, &d2.column(col)).unwrap().is_zero());
        }
    }

    #[test]
    fn toric_from_cyclic_tensor() {
        let t = tensor(&cyclic(3), &cyclic(3)).unwrap();
        t.validate().unwrap();
        assert_eq!(t.dims(), vec![9, 18, 9]);
        assert_eq!(t.betti().unwrap(), vec![1, 2, 1]);
        let report = weights(&t);
        assert_eq!(report, WeightReport { w_z: 4, w_x: 4, q_z: 2, q_x: 2 });
        let plaquette = t.supports(2, 0, 1).unwrap();
        assert_eq!(plaquette.len(), 4);
        // Plaquette (1⁺,1⁺) and vertex (1,1) share the edges (1⁺,1) and (1,1⁺).
        let v = t.index_of(0, &CellLabel::pair(CellLabel::whole(1), CellLabel::whole(1))).unwrap();
        assert_eq!(t.common_support(0, v).unwrap().len(), 2);
    }

    #[test]
    fn tensor_ordering_puts_left_degree_first() {
        let t = tensor(&path(2), &path(2)).unwrap();
        let b1 = t.basis(1);
        assert_eq!(b1[0], CellLabel::pair(CellLabel::half(1), CellLabel::whole(1)));
        assert_eq!(b1[2], CellLabel::pair(CellLabel::whole(1), CellLabel::half(1)));
    }

    #[test]
    fn transpose_reverses_degrees() {
        let r = path(3);
        let t = r.transpose_complex();
        assert_eq!(t.diff(1), r.diff(1).transpose());
        assert_eq!(t.betti().unwrap(), vec![0, 1]);
        assert_eq!(t.transpose_complex(), r);
    }

    #[test]
    fn direct_sum_adds_homology() {
        let s = direct_sum(&[(CellLabel::Int(1), cyclic(3)), (CellLabel::Int(2), cyclic(4))]).unwrap();
        s.validate().unwrap();
        assert_eq!(s.betti().unwrap(), vec![2, 2]);
        let single = direct_sum(&[(CellLabel::Int(1), cyclic(3))]).unwrap();
        assert_eq!(single.diffs(), cyclic(3).diffs());
        assert_eq!(single.basis(0)[0], CellLabel::pair(CellLabel::whole(1), CellLabel::Int(1)));
    }

    #[test]
    fn direct_sum_matches_tensor_with_points() {
        let n = 3;
        let parts: Vec<_> = (0..n).map(|k| (CellLabel::Int(k), path(2))).collect();
        let sum = direct_sum(&parts).unwrap();
        let prod = tensor(&path(2), &BasedComplex::point(ints(3))).unwrap();
        assert_eq!(sum.betti().unwrap(), prod.betti().unwrap());
        assert_eq!(sum.dims(), prod.dims());
    }

    #[test]
    fn kunneth_examples() {
        let r = kunneth_check(&cyclic(3), &cyclic(3)).unwrap();
        assert!(r.ok());
        assert_eq!(r.tensor_betti[1], 2);
        let dangling = BasedComplex::new(
            vec![
                (1..=4).map(CellLabel::whole).collect(),
                (1..=4).map(CellLabel::half).collect(),
            ],
            vec![BitMatrix::from_entries(4, 4, (0..4).flat_map(|i| [(i, i)].into_iter().chain((i < 3).then_some((i + 1, i)))))],
        )
        .unwrap();
        let r = kunneth_check(&path(4), &dangling).unwrap();
        assert!(r.ok());
        assert!(r.tensor_betti.iter().all(|&b| b == 0));
        let pt = BasedComplex::point(ints(1));
        let r = kunneth_check(&pt, &cyclic(5)).unwrap();
        assert_eq!(r.tensor_betti, cyclic(5).betti().unwrap());
    }

    #[test]
    fn zero_differentials_have_zero_weight() {
        let c = BasedComplex::new(vec![ints(2), ints(2), ints(2)], vec![BitMatrix::zeros(2, 2), BitMatrix::zeros(2, 2)]).unwrap();
        assert_eq!(weights(&c), WeightReport::default());
        assert!(c.supports(2, 0, 0).unwrap().is_empty());
    }

    /// Random valid complex of length 2 with at most six cells per degree.
    pub(crate) fn arb_complex() -> impl Strategy<Value = BasedComplex> {
        (0usize..=6, 0usize..=6, 0usize..=6, any::<u64>()).prop_map(|(n0, n1, n2, seed)| {
            let mut bits = seed;
            let mut next = || {
                bits = bits.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (bits >> 33) & 1 == 1
            };
            let d2 = BitMatrix::from_entries(n1, n2, (0..n1).flat_map(|r| (0..n2).map(move |c| (r, c))).filter(|_| next()).collect::<Vec<_>>());
            let cok = d2.transpose().kernel_basis();
            let rows: Vec<BitVec> = (0..n0)
                .map(|_| {
                    let mut v = BitVec::zeros(n1);
                    for k in 0..cok.cols() {
                        if next() {
                            v.xor_assign(&cok.column(k));
                        }
                    }
                    v
                })
                .collect();
            let d1 = BitMatrix::from_rows(n1, &rows);
            let labels = |deg: i64, n: usize| (0..n as i64).map(|k| CellLabel::Int(100 * deg + k)).collect();
            BasedComplex::new(vec![labels(0, n0), labels(1, n1), labels(2, n2)], vec![d1, d2]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_per_degree(c in arb_complex()) {
            c.validate().unwrap();
            let b = c.betti().unwrap();
            for i in 0..=2 {
                prop_assert_eq!(c.diff(i).rank() + b[i] + c.diff(i + 1).rank(), c.dim(i));
                prop_assert_eq!(c.homology(i).unwrap().dim(), b[i]);
            }
        }

        #[test]
        fn transpose_preserves_homology(c in arb_complex()) {
            let t = c.transpose_complex();
            t.validate().unwrap();
            let mut b = c.betti().unwrap();
            b.reverse();
            prop_assert_eq!(t.betti().unwrap(), b);
        }

        #[test]
        fn kunneth_holds(c in arb_complex(), d in arb_complex()) {
            let r = kunneth_check(&c, &d).unwrap();
            prop_assert!(r.ok(), "{:?}", r);
            tensor(&c, &d).unwrap().validate().unwrap();
        }

        #[test]
        fn reps_are_nontrivial_cycles(c in arb_complex()) {
            for i in 0..=2 {
                let h = c.homology(i).unwrap();
                for col in h.reps().columns() {
                    prop_assert!(c.diff(i).mul_vec(&col).is_zero());
                    prop_assert!(!h.project(&c, &col).unwrap().is_zero());
                }
            }
        }
    }
}
