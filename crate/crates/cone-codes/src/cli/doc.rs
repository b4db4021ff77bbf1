//! JSON documents for complexes and cones.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{BasedComplex, CellLabel, ChainError, LabelParseError};
use crate::cone::{ConeError, ConeSpec, Level};
use crate::constructions::Construction;
use crate::f2linalg::BitMatrix;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Label(#[from] LabelParseError),
    #[error("degree {degree} lists {found} labels, expected {expected}")]
    LabelCount { degree: usize, expected: usize, found: usize },
    #[error("entry {entry:?} is outside the {rows}x{cols} matrix")]
    Entry { entry: Vec<usize>, rows: usize, cols: usize },
    #[error("differential index {0} is out of range")]
    Degree(usize),
    #[error("level {got} listed at position {expected}")]
    LevelOrder { expected: usize, got: usize },
    #[error("declared block needs one representative matrix per degree")]
    Reps,
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// `{"degrees", "labels", "diffs"}` with `diffs` as `[degree, row, col]` triplets of `∂_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub degrees: Vec<usize>,
    pub labels: Vec<Vec<String>>,
    pub diffs: Vec<[usize; 3]>,
}

impl ComplexDocument {
    #[must_use]
    pub fn from_complex(c: &BasedComplex) -> Self {
        let mut diffs = Vec::new();
        for (k, d) in c.diffs().iter().enumerate() {
            diffs.extend(d.entries().map(|(r, col)| [k + 1, r, col]));
        }
        diffs.sort_unstable();
        Self {
            degrees: c.dims(),
            labels: c.bases().iter().map(|b| b.iter().map(ToString::to_string).collect()).collect(),
            diffs,
        }
    }

    /// Parses labels and matrices. The chain condition is checked separately by `validate`.
    ///
    /// # Errors
    ///
    /// Fails on malformed labels, wrong counts and out-of-range entries.
    pub fn to_complex(&self) -> Result<BasedComplex, DocumentError> {
        let top = self.degrees.len().saturating_sub(1);
        let mut bases = Vec::with_capacity(self.degrees.len());
        for (degree, &n) in self.degrees.iter().enumerate() {
            let labels = self.labels.get(degree).map_or(&[][..], Vec::as_slice);
            if labels.len() != n {
                return Err(DocumentError::LabelCount {
                    degree,
                    expected: n,
                    found: labels.len(),
                });
            }
            bases.push(labels.iter().map(|s| s.parse()).collect::<Result<Vec<CellLabel>, _>>()?);
        }
        let mut diffs: Vec<BitMatrix> = (1..=top).map(|i| BitMatrix::zeros(self.degrees[i - 1], self.degrees[i])).collect();
        for &[i, r, c] in &self.diffs {
            if i == 0 || i > top {
                return Err(DocumentError::Degree(i));
            }
            let d = &mut diffs[i - 1];
            if r >= d.rows() || c >= d.cols() {
                return Err(DocumentError::Entry {
                    entry: vec![i, r, c],
                    rows: d.rows(),
                    cols: d.cols(),
                });
            }
            d.flip(r, c);
        }
        Ok(BasedComplex::new(bases, diffs)?)
    }
}

fn sparse(m: &BitMatrix) -> Vec<[usize; 2]> {
    m.entries().map(|(r, c)| [r, c]).collect()
}

fn dense(rows: usize, cols: usize, entries: &[[usize; 2]]) -> Result<BitMatrix, DocumentError> {
    if let Some(e) = entries.iter().find(|[r, c]| *r >= rows || *c >= cols) {
        return Err(DocumentError::Entry {
            entry: e.to_vec(),
            rows,
            cols,
        });
    }
    Ok(BitMatrix::from_entries(rows, cols, entries.iter().map(|&[r, c]| (r, c))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDocument {
    pub level: usize,
    pub offset: usize,
    #[serde(flatten)]
    pub complex: ComplexDocument,
}

/// Block `C^s` at total degree `i` into `C^r`, as `[row, col]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDocument {
    pub r: usize,
    pub s: usize,
    pub i: usize,
    pub entries: Vec<[usize; 2]>,
}

/// Expected embedded code and, per degree `s`, its representatives over level `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredDocument {
    pub complex: ComplexDocument,
    pub reps: Vec<Vec<[usize; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub levels: Vec<LevelDocument>,
    pub blocks: Vec<BlockDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared: Option<DeclaredDocument>,
    #[serde(default)]
    pub regular_degrees: Vec<usize>,
}

impl ConeDocument {
    #[must_use]
    pub fn from_spec(spec: &ConeSpec) -> Self {
        Self {
            name: None,
            levels: spec
                .levels()
                .iter()
                .enumerate()
                .map(|(s, l)| LevelDocument {
                    level: s,
                    offset: l.offset,
                    complex: ComplexDocument::from_complex(&l.complex),
                })
                .collect(),
            blocks: spec
                .blocks()
                .filter(|(_, m)| !m.is_zero())
                .map(|(&(r, s, i), m)| BlockDocument {
                    r,
                    s,
                    i,
                    entries: sparse(m),
                })
                .collect(),
            declared: None,
            regular_degrees: Vec::new(),
        }
    }

    #[must_use]
    pub fn from_construction(c: &Construction) -> Self {
        Self {
            name: Some(c.name.clone()),
            declared: Some(DeclaredDocument {
                complex: ComplexDocument::from_complex(&c.declared),
                reps: c.declared_reps.iter().map(sparse).collect(),
            }),
            regular_degrees: c.regular_degrees.clone(),
            ..Self::from_spec(&c.spec)
        }
    }

    /// # Errors
    ///
    /// Fails on malformed levels or blocks of the wrong shape.
    pub fn to_spec(&self) -> Result<ConeSpec, DocumentError> {
        let mut levels = Vec::with_capacity(self.levels.len());
        for (expected, l) in self.levels.iter().enumerate() {
            if l.level != expected {
                return Err(DocumentError::LevelOrder { expected, got: l.level });
            }
            levels.push(Level::new(l.complex.to_complex()?, l.offset));
        }
        let mut spec = ConeSpec::new(levels);
        for b in &self.blocks {
            let levels = spec.num_levels();
            if b.r.max(b.s) >= levels {
                return Err(ConeError::UnknownLevel { s: b.r.max(b.s), levels }.into());
            }
            if b.r >= b.s {
                return Err(ConeError::NotLowerTriangular { r: b.r, s: b.s }.into());
            }
            let (rows, cols) = spec.block_shape(b.r, b.s, b.i);
            spec.set_block(b.r, b.s, b.i, dense(rows, cols, &b.entries)?)?;
        }
        Ok(spec)
    }

    /// The document as a [`Construction`] when it carries a declared code.
    ///
    /// # Errors
    ///
    /// As [`ConeDocument::to_spec`], plus malformed representatives.
    pub fn to_construction(&self) -> Result<Option<Construction>, DocumentError> {
        let spec = self.to_spec()?;
        let Some(declared) = &self.declared else {
            return Ok(None);
        };
        let complex = declared.complex.to_complex()?;
        if declared.reps.len() != complex.top_degree() + 1 || declared.reps.len() > spec.num_levels() {
            return Err(DocumentError::Reps);
        }
        let reps = declared
            .reps
            .iter()
            .enumerate()
            .map(|(s, e)| dense(spec.level(s).dim(s), complex.dim(s), e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(Construction {
            name: self.name.clone().unwrap_or_else(|| "cone".into()),
            spec,
            declared: complex,
            declared_reps: reps,
            regular_degrees: self.regular_degrees.clone(),
        }))
    }
}

/// Either document kind, told apart by its fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Cone(ConeDocument),
    Complex(ComplexDocument),
}

impl Document {
    /// # Errors
    ///
    /// Fails on invalid JSON or a shape matching neither kind.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with a trailing newline.
    #[must_use]
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// The complex itself, or the assembled total complex of a cone.
    ///
    /// # Errors
    ///
    /// Fails on malformed documents and chain-condition violations.
    pub fn total_complex(&self) -> Result<BasedComplex, DocumentError> {
        match self {
            Document::Complex(c) => Ok(c.to_complex()?),
            Document::Cone(c) => Ok(c.to_spec()?.assemble()?),
        }
    }
}
