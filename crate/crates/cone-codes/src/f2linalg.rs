//! Dense bit-packed linear algebra over F2.
//!
//! Matrices are stored row-major, 64 columns per machine word. Every
//! elimination uses the same pivot rule (the lowest row index holding a 1 in
//! the leftmost unresolved column), so kernels, solutions and quotient
//! representatives are reproducible bit for bit.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Errors raised by the linear-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch in {op}: left operand is {left:?}, right operand is {right:?}")]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("subspace column {column} is not contained in the ambient space")]
    NotContained { column: usize },
    #[error("vector does not lie in the ambient space of the quotient")]
    NotInSpace,
}

/// A vector over F2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    #[must_use]
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector with the given positions toggled (repeated positions cancel).
    #[must_use]
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    #[must_use]
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i),
        )
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[must_use]
    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Parity of the overlap with `other`.
    #[must_use]
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// First set bit at position `start` or later.
    #[must_use]
    pub fn first_one_from(&self, start: usize) -> Option<usize> {
        self.ones_iter().find(|&i| i >= start)
    }

    #[must_use]
    pub fn first_one(&self) -> Option<usize> {
        self.ones_iter().next()
    }

    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Concatenation `self ‖ other`.
    #[must_use]
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones_iter() {
            out.set(i, true);
        }
        for i in other.ones_iter() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The bits in positions `start..start + len`.
    #[must_use]
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len, "slice out of range");
        BitVec::from_indices(len, (start..start + len).filter(|&i| self.get(i)).map(|i| i - start))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "BitVec[{s}]")
    }
}

/// A dense matrix over F2, bit-packed by rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from `(row, col)` positions; repeated positions cancel.
    #[must_use]
    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c) in entries {
            m.flip(r, c);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 bytes, e.g. `&[&[1, 1, 0], &[0, 1, 1]]`.
    ///
    /// # Panics
    ///
    /// Panics if the rows have different lengths.
    #[must_use]
    pub fn from_bits(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    #[must_use]
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row length mismatch");
            m.row_words_mut(r).copy_from_slice(v.words());
        }
        m
    }

    #[must_use]
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for r in v.ones_iter() {
                m.set(r, c, true);
            }
        }
        m
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[must_use]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range {:?}", self.shape());
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range {:?}", self.shape());
        let mask = 1u64 << (c % WORD);
        let w = &mut self.data[r * self.stride + c / WORD];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "entry ({r},{c}) out of range {:?}", self.shape());
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[must_use]
    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    #[must_use]
    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&r| self.get(r, c)))
    }

    #[must_use]
    pub fn columns(&self) -> Vec<BitVec> {
        let t = self.transpose();
        (0..t.rows).map(|r| t.row(r)).collect()
    }

    /// `row[dst] ^= row[src]` restricted to words from `from_word` on.
    fn xor_rows(&mut self, src: usize, dst: usize, from_word: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, v) in b[from_word..].iter_mut().zip(&a[from_word..]) {
            *d ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for w in 0..s {
            self.data.swap(a * s + w, b * s + w);
        }
    }

    #[must_use]
    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Column positions of the set bits of row `r`.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        let words = self.row_words(r);
        words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    /// All set positions in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| self.row_ones(r).map(move |c| (r, c)))
    }

    /// Matrix product over F2.
    ///
    /// # Errors
    ///
    /// Returns a shape error when `self.cols() != other.rows()`.
    pub fn multiply(&self, other: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape {
                op: "multiply",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let ks: Vec<usize> = self.row_ones(r).collect();
            let dst = r * out.stride;
            for k in ks {
                let src = other.row_words(k);
                for (d, v) in out.data[dst..dst + out.stride].iter_mut().zip(src) {
                    *d ^= v;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    ///
    /// # Panics
    ///
    /// Panics if `v.len() != self.cols()`.
    #[must_use]
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let ones: u32 = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if ones % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// `[self | other]`.
    ///
    /// # Errors
    ///
    /// Returns a shape error when the row counts differ.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::Shape {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for (r, c) in self.entries() {
            out.set(r, c, true);
        }
        for (r, c) in other.entries() {
            out.set(r, self.cols + c, true);
        }
        Ok(out)
    }

    /// `self` stacked above `other`.
    ///
    /// # Errors
    ///
    /// Returns a shape error when the column counts differ.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::Shape {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(BitMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    #[must_use]
    pub fn select_columns(&self, columns: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, columns.len());
        for (j, &c) in columns.iter().enumerate() {
            for r in 0..self.rows {
                if self.get(r, c) {
                    out.set(r, j, true);
                }
            }
        }
        out
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[must_use]
    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    #[must_use]
    pub fn column_weights(&self) -> Vec<usize> {
        let mut out = vec![0; self.cols];
        for (_, c) in self.entries() {
            out[c] += 1;
        }
        out
    }

    #[must_use]
    pub fn max_row_weight(&self) -> usize {
        (0..self.rows).map(|r| self.row_weight(r)).max().unwrap_or(0)
    }

    #[must_use]
    pub fn max_column_weight(&self) -> usize {
        self.column_weights().into_iter().max().unwrap_or(0)
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| work.get(r, c)) else {
                continue;
            };
            work.swap_rows(rank, p);
            for r in rank + 1..self.rows {
                if work.get(r, c) {
                    work.xor_rows(rank, r, c / WORD);
                }
            }
            rank += 1;
        }
        rank
    }

    #[must_use]
    pub fn kernel_basis(&self) -> BitMatrix {
        Echelon::new(self).kernel_basis()
    }

    #[must_use]
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        Echelon::new(self).solve(b)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let s: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '.' }).collect();
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of a matrix together with the row operations
/// that produced it, so that repeated solves against the same matrix are cheap.
#[derive(Clone, Debug)]
pub struct Echelon {
    rref: BitMatrix,
    transform: BitMatrix,
    pivots: Vec<usize>,
}

impl Echelon {
    #[must_use]
    pub fn new(a: &BitMatrix) -> Self {
        let mut rref = a.clone();
        let mut transform = BitMatrix::identity(a.rows);
        let mut pivots = Vec::new();
        for c in 0..a.cols {
            let r = pivots.len();
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&q| rref.get(q, c)) else {
                continue;
            };
            rref.swap_rows(r, p);
            transform.swap_rows(r, p);
            for q in 0..a.rows {
                if q != r && rref.get(q, c) {
                    rref.xor_rows(r, q, c / WORD);
                    transform.xor_rows(r, q, 0);
                }
            }
            pivots.push(c);
        }
        Self { rref, transform, pivots }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    #[must_use]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    #[must_use]
    pub fn rref(&self) -> &BitMatrix {
        &self.rref
    }

    /// The invertible matrix `T` with `T · a == rref`.
    #[must_use]
    pub fn transform(&self) -> &BitMatrix {
        &self.transform
    }

    /// Kernel basis as columns, one per free column in increasing order.
    #[must_use]
    pub fn kernel_basis(&self) -> BitMatrix {
        let cols = self.rref.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = BitMatrix::zeros(cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.set(f, j, true);
            for (k, &p) in self.pivots.iter().enumerate() {
                if self.rref.get(k, f) {
                    out.set(p, j, true);
                }
            }
        }
        out
    }

    /// Some `x` with `a · x == b` (free variables zero), or `None`.
    ///
    /// # Panics
    ///
    /// Panics if `b.len()` differs from the row count of `a`.
    #[must_use]
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rref.rows, "right-hand side length mismatch");
        let reduced = self.transform.mul_vec(b);
        if reduced.first_one_from(self.rank()).is_some() {
            return None;
        }
        let mut x = BitVec::zeros(self.rref.cols);
        for (k, &p) in self.pivots.iter().enumerate() {
            if reduced.get(k) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Whether `b` lies in the column space.
    #[must_use]
    pub fn contains(&self, b: &BitVec) -> bool {
        let reduced = self.transform.mul_vec(b);
        reduced.first_one_from(self.rank()).is_none()
    }
}

/// Incrementally grown set of independent vectors, used to pick bases greedily.
#[derive(Clone, Debug)]
pub struct IncrementalBasis {
    len: usize,
    reduced: Vec<(usize, BitVec)>,
}

impl IncrementalBasis {
    #[must_use]
    pub fn new(len: usize) -> Self {
        Self { len, reduced: Vec::new() }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, b) in &self.reduced {
            if v.get(*p) {
                v.xor_assign(b);
            }
        }
        v
    }

    #[must_use]
    pub fn spans(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` if it is independent of the current vectors; reports whether it was added.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let r = self.reduce(v);
        match r.first_one() {
            Some(p) => {
                self.reduced.push((p, r));
                true
            }
            None => false,
        }
    }
}

/// A complement basis for `W ⊆ V` together with a coordinate solver for `V/W`.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    ambient_dim: usize,
    subspace_basis: BitMatrix,
    cocycle_reps: BitMatrix,
    solver: Echelon,
}

impl QuotientBasis {
    #[must_use]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of `V/W`.
    #[must_use]
    pub fn dim(&self) -> usize {
        self.cocycle_reps.cols()
    }

    /// Independent columns spanning `W`.
    #[must_use]
    pub fn subspace_basis(&self) -> &BitMatrix {
        &self.subspace_basis
    }

    /// Coset representatives spanning `V/W`.
    #[must_use]
    pub fn cocycle_reps(&self) -> &BitMatrix {
        &self.cocycle_reps
    }

    /// Coordinates of `[v]` in the representative basis.
    ///
    /// # Errors
    ///
    /// Returns [`LinalgError::NotInSpace`] when `v ∉ V`.
    pub fn coordinates(&self, v: &BitVec) -> Result<BitVec, LinalgError> {
        let x = self.solver.solve(v).ok_or(LinalgError::NotInSpace)?;
        Ok(x.slice(self.subspace_basis.cols(), self.dim()))
    }

    /// A `dim × ambient_dim` matrix `Q` with `Q · v == coordinates(v)` for every `v ∈ V`.
    #[must_use]
    pub fn coordinate_functional(&self) -> BitMatrix {
        let start = self.subspace_basis.cols();
        let rows: Vec<BitVec> = (start..start + self.dim()).map(|k| self.solver.transform().row(k)).collect();
        BitMatrix::from_rows(self.ambient_dim, &rows)
    }
}

/// Product over F2.
///
/// # Errors
///
/// Returns a shape error when the inner dimensions differ.
pub fn multiply(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix, LinalgError> {
    a.multiply(b)
}

#[must_use]
pub fn rank(a: &BitMatrix) -> usize {
    a.rank()
}

#[must_use]
pub fn kernel_basis(a: &BitMatrix) -> BitMatrix {
    a.kernel_basis()
}

#[must_use]
pub fn solve(a: &BitMatrix, b: &BitVec) -> Option<BitVec> {
    a.solve(b)
}

#[must_use]
pub fn transpose(a: &BitMatrix) -> BitMatrix {
    a.transpose()
}

/// Extends an independent subset of `w_basis` by columns of `v_basis` to a basis of `V`.
///
/// # Errors
///
/// Returns [`LinalgError::NotContained`] with the first column of `w_basis`
/// outside `span(v_basis)`, or a shape error when the row counts differ.
pub fn quotient_basis(v_basis: &BitMatrix, w_basis: &BitMatrix) -> Result<QuotientBasis, LinalgError> {
    if v_basis.rows() != w_basis.rows() {
        return Err(LinalgError::Shape {
            op: "quotient_basis",
            left: v_basis.shape(),
            right: w_basis.shape(),
        });
    }
    let n = v_basis.rows();
    let v_cols = v_basis.columns();
    let w_cols = w_basis.columns();
    let mut v_span = IncrementalBasis::new(n);
    for c in &v_cols {
        v_span.insert(c);
    }
    if let Some(column) = w_cols.iter().position(|w| !v_span.spans(w)) {
        return Err(LinalgError::NotContained { column });
    }
    let mut span = IncrementalBasis::new(n);
    let sub: Vec<BitVec> = w_cols.into_iter().filter(|w| span.insert(w)).collect();
    let reps: Vec<BitVec> = v_cols.into_iter().filter(|v| span.insert(v)).collect();
    let subspace_basis = BitMatrix::from_columns(n, &sub);
    let cocycle_reps = BitMatrix::from_columns(n, &reps);
    let joined = subspace_basis.hstack(&cocycle_reps)?;
    Ok(QuotientBasis {
        ambient_dim: n,
        subspace_basis,
        cocycle_reps,
        solver: Echelon::new(&joined),
    })
}
