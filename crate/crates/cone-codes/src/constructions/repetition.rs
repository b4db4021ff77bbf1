//! Repetition codes and string defects.
//!
//! Degree-1 cells are half-integers `i⁺` and degree-0 cells integers `i`, with
//! `∂|i⁺⟩ = |i⟩ + |i+1⟩`.

use crate::chain::{BasedComplex, CellLabel};
use crate::f2linalg::{BitMatrix, BitVec};

use super::ConstructionError;

fn line(l: usize, halves: usize, wrap: bool) -> BasedComplex {
    let wholes: Vec<CellLabel> = (1..=l as i64).map(CellLabel::whole).collect();
    let ones: Vec<CellLabel> = (1..=halves as i64).map(CellLabel::half).collect();
    let mut entries = Vec::new();
    for i in 0..halves {
        entries.push((i, i));
        if i + 1 < l {
            entries.push((i + 1, i));
        } else if wrap {
            entries.push((0, i));
        }
    }
    let d = BitMatrix::from_entries(l, halves, entries);
    BasedComplex::length_one(ones, wholes, d).expect("repetition shapes are consistent")
}

/// `R(L)`: bits `1..L`, checks `1⁺..(L−1)⁺`.
///
/// # Errors
///
/// Rejects `L = 0`.
pub fn repetition(l: usize) -> Result<BasedComplex, ConstructionError> {
    if l < 1 {
        return Err(ConstructionError::Parameter("repetition code needs L >= 1".into()));
    }
    Ok(line(l, l - 1, false))
}

/// `R°(L)`: labels taken modulo `L`.
///
/// # Errors
///
/// Rejects `L < 2`.
pub fn cyclic_repetition(l: usize) -> Result<BasedComplex, ConstructionError> {
    if l < 2 {
        return Err(ConstructionError::Parameter("cyclic repetition code needs L >= 2".into()));
    }
    Ok(line(l, l, true))
}

/// `R⊸(L)`: checks `1⁺..L⁺` with `∂|L⁺⟩ = |L⟩`.
///
/// # Errors
///
/// Rejects `L = 0`.
pub fn dangling_repetition(l: usize) -> Result<BasedComplex, ConstructionError> {
    if l < 1 {
        return Err(ConstructionError::Parameter("dangling repetition code needs L >= 1".into()));
    }
    Ok(line(l, l, false))
}

/// Indicator of the string defect `R[S)` over the cells of `R(L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringDefect {
    /// Over degree-0 cells `1..L`.
    pub wholes: BitVec,
    /// Over degree-1 cells `1⁺..(L−1)⁺`.
    pub halves: BitVec,
}

impl StringDefect {
    /// Whether the doubled coordinate `c` lies in the defect.
    #[must_use]
    pub fn contains(&self, c: i64) -> bool {
        let i = c.div_euclid(2);
        if i < 1 {
            return false;
        }
        let i = (i - 1) as usize;
        if c.rem_euclid(2) == 0 {
            i < self.wholes.len() && self.wholes.get(i)
        } else {
            i < self.halves.len() && self.halves.get(i)
        }
    }
}

/// Union of the half-open intervals `[i₁, i₂), [i₃, i₄), …` of the sorted endpoints `S`.
///
/// # Errors
///
/// Rejects odd `|S|` and endpoints outside `1..=L`.
pub fn string_defect(l: usize, endpoints: &[usize]) -> Result<StringDefect, ConstructionError> {
    if endpoints.len() % 2 == 1 {
        return Err(ConstructionError::OddDefect(endpoints.len()));
    }
    if let Some(&bad) = endpoints.iter().find(|&&e| e < 1 || e > l) {
        return Err(ConstructionError::Parameter(format!("defect endpoint {bad} outside 1..={l}")));
    }
    let mut sorted = endpoints.to_vec();
    sorted.sort_unstable();
    let mut wholes = BitVec::zeros(l);
    let mut halves = BitVec::zeros(l.saturating_sub(1));
    for pair in sorted.chunks(2) {
        let (start, end) = (pair[0], pair[1]);
        for s in start..end {
            wholes.flip(s - 1);
            halves.flip(s - 1);
        }
    }
    Ok(StringDefect { wholes, halves })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homology_of_the_three_variants() {
        for l in 2..=6 {
            assert_eq!(repetition(l).unwrap().betti().unwrap(), vec![1, 0]);
            assert_eq!(cyclic_repetition(l).unwrap().betti().unwrap(), vec![1, 1]);
            assert_eq!(dangling_repetition(l).unwrap().betti().unwrap(), vec![0, 0]);
        }
        assert_eq!(repetition(1).unwrap().dims(), vec![1, 0]);
        assert!(cyclic_repetition(1).is_err());
    }

    #[test]
    fn dangling_end() {
        let d = dangling_repetition(3).unwrap();
        assert_eq!(d.boundary_of(1, 2), vec![2]);
        assert_eq!(d.basis(1)[2], CellLabel::half(3));
    }

    #[test]
    fn defect_examples() {
        let empty = string_defect(4, &[]).unwrap();
        assert!(empty.wholes.is_zero() && empty.halves.is_zero());
        let d = string_defect(5, &[1, 3]).unwrap();
        assert_eq!(d.wholes, BitVec::from_bits(&[1, 1, 0, 0, 0]));
        assert_eq!(d.halves, BitVec::from_bits(&[1, 1, 0, 0]));
        assert!(d.contains(CellLabel::half(2).coord().unwrap()));
        assert!(!d.contains(CellLabel::whole(3).coord().unwrap()));
        let d = string_defect(6, &[4, 1, 6, 2]).unwrap();
        assert_eq!(d.wholes, BitVec::from_bits(&[1, 0, 0, 1, 1, 0]));
        assert_eq!(d.halves, BitVec::from_bits(&[1, 0, 0, 1, 1]));
        assert_eq!(string_defect(3, &[1]), Err(ConstructionError::OddDefect(1)));
    }

    #[test]
    fn defect_boundary_is_its_endpoints() {
        let r = repetition(6).unwrap();
        let d = string_defect(6, &[2, 5]).unwrap();
        assert_eq!(r.diff(1).mul_vec(&d.halves), BitVec::from_bits(&[0, 1, 0, 0, 1, 0]));
    }
}
