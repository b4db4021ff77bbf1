//! Square complexes and their `L`-subdivision.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::{direct_sum, tensor, BasedComplex, CellLabel};
use crate::cone::{ConeSpec, Level};
use crate::css::CssCode;
use crate::f2linalg::{BitMatrix, BitVec};

use super::repetition::dangling_repetition;
use super::{column_matrix, identity_reps, Construction, ConstructionError};

/// For every adjacent `(a₂, a₀)`, its two common qubits `(h, v)` with `h < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SquareAssignment {
    pub squares: BTreeMap<(usize, usize), (usize, usize)>,
}

impl SquareAssignment {
    /// Whether `a1` is the horizontal qubit of `(a2, a0)`.
    #[must_use]
    pub fn is_horizontal(&self, a2: usize, a0: usize, a1: usize) -> Option<bool> {
        self.squares.get(&(a2, a0)).and_then(|&(h, v)| {
            if a1 == h {
                Some(true)
            } else if a1 == v {
                Some(false)
            } else {
                None
            }
        })
    }
}

/// Checks that every adjacent `(a₂, a₀)` shares exactly two qubits.
///
/// # Errors
///
/// Returns the first pair, in basis order, with a different count.
pub fn check_square_complex(a: &CssCode) -> Result<SquareAssignment, ConstructionError> {
    let mut squares = BTreeMap::new();
    for a2 in 0..a.n_z() {
        for a0 in 0..a.n_x() {
            let common: Vec<usize> = a.complex().common_support(a2, a0)?.into_iter().collect();
            match common.len() {
                0 => {}
                2 => {
                    squares.insert((a2, a0), (common[0], common[1]));
                }
                n => return Err(ConstructionError::NotSquare { a2, a0, common: n }),
            }
        }
    }
    Ok(SquareAssignment { squares })
}

/// Placement of the dangling repetition factors and the ends used by each gluing map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Orientation {
    /// Use `R⊸ᵀ`, whose dangling end sits at cell 1, in every inner piece.
    transposed: bool,
    /// Top-degree index glued from `A²¹` into `A¹`.
    a21: End,
    /// Top-degree index glued from `A¹⁰` into `A⁰`.
    a10: End,
    /// Top-degree index of `A²⁰` glued into `A¹⁰`.
    a20: End,
    /// Bottom-degree index hit by `A² → A²¹`.
    b2: End,
    /// Bottom-degree index in `O(s)`.
    bo: End,
    /// Bottom-degree index hit by `A¹ → A¹⁰`.
    b1: End,
    /// Send the first factor of `A²⁰` to the vertical piece instead of the horizontal one.
    swap: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    First,
    Last,
}

impl Orientation {
    const FROZEN: Self = Self {
        transposed: false,
        a21: End::Last,
        a10: End::Last,
        a20: End::Last,
        b2: End::First,
        bo: End::First,
        b1: End::First,
        swap: false,
    };

    #[cfg(test)]
    fn all() -> impl Iterator<Item = Self> {
        (0u32..256).map(|m| {
            let bit = |k: u32| m >> k & 1 == 1;
            let end = |k: u32| if bit(k) { End::Last } else { End::First };
            Self {
                transposed: bit(0),
                a21: end(1),
                a10: end(2),
                a20: end(3),
                b2: end(4),
                bo: end(5),
                b1: end(6),
                swap: bit(7),
            }
        })
    }
}

/// Cells of one `R⊸` factor in the chosen orientation.
struct Factor {
    complex: BasedComplex,
    l: i64,
    transposed: bool,
}

impl Factor {
    fn new(l: usize, transposed: bool) -> Result<Self, ConstructionError> {
        let r = dangling_repetition(l)?;
        Ok(Self {
            complex: if transposed { r.transpose_complex() } else { r },
            l: l as i64,
            transposed,
        })
    }

    fn index(&self, end: End) -> i64 {
        match end {
            End::First => 1,
            End::Last => self.l,
        }
    }

    /// Cell of degree 1 (`top`) or 0 at position `i`.
    fn cell(&self, top: bool, i: i64) -> CellLabel {
        if top != self.transposed {
            CellLabel::half(i)
        } else {
            CellLabel::whole(i)
        }
    }
}

fn int(i: usize) -> CellLabel {
    CellLabel::Int(i as i64)
}

fn tag(a: usize, b: usize) -> CellLabel {
    CellLabel::pair(int(a), int(b))
}

fn as_int(c: &CellLabel) -> usize {
    match c {
        CellLabel::Int(i) => *i as usize,
        _ => unreachable!("integer tag"),
    }
}

fn untag(c: &CellLabel) -> (usize, usize) {
    let p = c.parts().expect("tag pair");
    (as_int(&p[0]), as_int(&p[1]))
}

fn lvl(s: u32, x: CellLabel) -> CellLabel {
    CellLabel::pair(CellLabel::Level(s), x)
}

/// Inner cones plus adjacency data shared by the outer gluing.
struct Pieces {
    inner1: ConeSpec,
    inner0: ConeSpec,
    a21_pairs: Vec<(usize, usize)>,
    a10_pairs: Vec<(usize, usize)>,
}

fn pieces(a: &CssCode, sq: &SquareAssignment, f: &Factor, o: Orientation) -> Result<Pieces, ConstructionError> {
    let d2 = a.complex().diff_ref(2);
    let d1 = a.complex().diff_ref(1);
    let a21_pairs: Vec<(usize, usize)> = d2.entries().map(|(a1, a2)| (a2, a1)).collect::<BTreeSet<_>>().into_iter().collect();
    let a10_pairs: Vec<(usize, usize)> = d1.entries().map(|(a0, a1)| (a1, a0)).collect::<BTreeSet<_>>().into_iter().collect();
    let sum_over = |pairs: &[(usize, usize)], c: &BasedComplex| -> Result<BasedComplex, ConstructionError> {
        let parts: Vec<_> = pairs.iter().map(|&(x, y)| (tag(x, y), c.clone())).collect();
        Ok(direct_sum(&parts)?)
    };
    let a1_cells: Vec<CellLabel> = (0..a.n()).map(int).collect();
    let a0_cells: Vec<CellLabel> = (0..a.n_x()).map(int).collect();

    let a21 = sum_over(&a21_pairs, &f.complex)?;
    let mut inner1 = ConeSpec::new(vec![
        Level::new(BasedComplex::point(a1_cells), 1),
        Level::new(a21, 1),
    ]);
    let top21 = f.cell(true, f.index(o.a21));
    inner1.set_block_by_labels(0, 1, 2, |c| {
        let p = c.parts().expect("piece cell");
        if p[0] == top21 {
            vec![int(untag(&p[1]).1)]
        } else {
            Vec::new()
        }
    })?;

    let square_pairs: Vec<(usize, usize)> = sq.squares.keys().copied().collect();
    let a20 = sum_over(&square_pairs, &tensor(&f.complex, &f.complex)?)?;
    let a10 = sum_over(&a10_pairs, &f.complex)?;
    let mut inner0 = ConeSpec::new(vec![
        Level::new(BasedComplex::point(a0_cells), 0),
        Level::new(a10, 0),
        Level::new(a20, 0),
    ]);
    let anchor20 = f.index(o.a20);
    for i in 1..=2 {
        inner0.set_block_by_labels(1, 2, i, |c| {
            let p = c.parts().expect("piece cell");
            let (a2, a0) = untag(&p[1]);
            let (h, v) = sq.squares[&(a2, a0)];
            let (e1, e2) = if o.swap { (v, h) } else { (h, v) };
            let xy = p[0].parts().expect("grid cell");
            let mut out = Vec::new();
            if xy[0] == f.cell(true, anchor20) {
                out.push(CellLabel::pair(xy[1].clone(), tag(e1, a0)));
            }
            if xy[1] == f.cell(true, anchor20) {
                out.push(CellLabel::pair(xy[0].clone(), tag(e2, a0)));
            }
            out
        })?;
    }
    let top10 = f.cell(true, f.index(o.a10));
    inner0.set_block_by_labels(0, 1, 1, |c| {
        let p = c.parts().expect("piece cell");
        if p[0] == top10 {
            vec![int(untag(&p[1]).1)]
        } else {
            Vec::new()
        }
    })?;
    Ok(Pieces {
        inner1,
        inner0,
        a21_pairs,
        a10_pairs,
    })
}

/// Checks the homology the inner cones must have: `H(C¹)` is `A₁` in degree 1
/// and `H(C⁰)` is `A₀` in degree 0, both spanned by the included cells.
fn check_inner(p: &Pieces, a: &CssCode) -> Result<(BasedComplex, BasedComplex), String> {
    let c1 = p.inner1.assemble().map_err(|e| format!("inner C1: {e}"))?;
    let c0 = p.inner0.assemble().map_err(|e| format!("inner C0: {e}"))?;
    let betti1 = c1.betti().map_err(|e| e.to_string())?;
    let betti0 = c0.padded(2).betti().map_err(|e| e.to_string())?;
    if betti1 != [0, a.n(), 0] {
        return Err(format!("inner C1 homology {betti1:?}, expected [0, {}, 0]", a.n()));
    }
    if betti0 != [a.n_x(), 0, 0] {
        return Err(format!("inner C0 homology {betti0:?}, expected [{}, 0, 0]", a.n_x()));
    }
    let spans = |c: &BasedComplex, deg: usize, k: usize| -> Result<bool, String> {
        let h = c.homology(deg).map_err(|e| e.to_string())?;
        let incl: Vec<_> = (0..k)
            .map(|j| {
                let idx = c.index_of(deg, &lvl(0, int(j))).expect("included cell");
                let v = BitVec::unit(c.dim(deg), idx);
                h.project(c, &v).map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        Ok(BitMatrix::from_columns(h.dim(), &incl).rank() == k)
    };
    if !spans(&c1, 1, a.n())? {
        return Err("A1 cells do not span H1 of inner C1".into());
    }
    if !spans(&c0, 0, a.n_x())? {
        return Err("A0 cells do not span H0 of inner C0".into());
    }
    Ok((c1, c0))
}

fn build(a: &CssCode, l: usize, o: Orientation) -> Result<Construction, ConstructionError> {
    if l < 2 {
        return Err(ConstructionError::Parameter(format!("L-subdivision needs L >= 2, got {l}")));
    }
    let sq = check_square_complex(a)?;
    let f = Factor::new(l, o.transposed)?;
    let p = pieces(a, &sq, &f, o)?;
    let (c1, c0) = check_inner(&p, a).map_err(ConstructionError::Orientation)?;
    let a2_cells: Vec<CellLabel> = (0..a.n_z()).map(int).collect();
    let mut spec = ConeSpec::new(vec![
        Level::new(c0.clone(), 0),
        Level::new(c1.clone(), 0),
        Level::new(BasedComplex::point(a2_cells), 2),
    ]);
    let by_a2: BTreeMap<usize, Vec<usize>> = p.a21_pairs.iter().fold(BTreeMap::new(), |mut m, &(a2, a1)| {
        m.entry(a2).or_insert_with(Vec::new).push(a1);
        m
    });
    let by_a1: BTreeMap<usize, Vec<usize>> = p.a10_pairs.iter().fold(BTreeMap::new(), |mut m, &(a1, a0)| {
        m.entry(a1).or_insert_with(Vec::new).push(a0);
        m
    });
    let b2 = f.cell(false, f.index(o.b2));
    spec.set_block_by_labels(1, 2, 2, |c| {
        let a2 = as_int(c);
        by_a2
            .get(&a2)
            .into_iter()
            .flatten()
            .map(|&a1| lvl(1, CellLabel::pair(b2.clone(), tag(a2, a1))))
            .collect()
    })?;
    let bo = f.cell(false, f.index(o.bo));
    let b1 = f.cell(false, f.index(o.b1));
    for i in 0..=2 {
        spec.set_block_by_labels(0, 1, i, |c| {
            let parts = c.parts().expect("level cell");
            if parts[0] == CellLabel::Level(0) {
                let a1 = as_int(&parts[1]);
                return by_a1
                    .get(&a1)
                    .into_iter()
                    .flatten()
                    .map(|&a0| lvl(1, CellLabel::pair(b1.clone(), tag(a1, a0))))
                    .collect();
            }
            let q = parts[1].parts().expect("piece cell");
            let s = &q[0];
            let (a2, a1) = untag(&q[1]);
            by_a1
                .get(&a1)
                .into_iter()
                .flatten()
                .filter_map(|&a0| {
                    let grid = match sq.is_horizontal(a2, a0, a1)? {
                        true => CellLabel::pair(s.clone(), bo.clone()),
                        false => CellLabel::pair(bo.clone(), s.clone()),
                    };
                    Some(lvl(2, CellLabel::pair(grid, tag(a2, a0))))
                })
                .collect()
        })?;
    }
    let reps1 = column_matrix(c1.dim(1), a.n(), |j| c1.index_of(1, &lvl(0, int(j))).into_iter().collect());
    let reps0 = column_matrix(c0.dim(0), a.n_x(), |j| c0.index_of(0, &lvl(0, int(j))).into_iter().collect());
    Ok(Construction {
        name: "subdivision".into(),
        spec,
        declared: a.complex().clone(),
        declared_reps: vec![reps0, reps1, identity_reps(a.n_z())],
        regular_degrees: vec![1],
    })
}

/// The `L`-subdivision of a square complex, as a 3-level cone whose levels 1
/// and 0 are themselves assembled cones over dangling repetition codes.
///
/// # Errors
///
/// Rejects `L < 2` and codes that are not square complexes; reports the failing
/// check when an inner cone lacks its expected homology.
pub fn l_subdivision(a: &CssCode, l: usize) -> Result<Construction, ConstructionError> {
    build(a, l, Orientation::FROZEN)
}

/// `|A₁| + L·#(a₂∼a₁) + 2L²·#(a₂∼a₀) + L·#(a₁∼a₀)`.
#[must_use]
pub fn subdivision_qubits(a: &CssCode, l: usize) -> usize {
    let squares = check_square_complex(a).map_or(0, |s| s.squares.len());
    a.n() + l * a.h_z().count_ones() + 2 * l * l * squares + l * a.complex().diff_ref(1).count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::codes::{toric_code, xxx_ziz};

    #[test]
    fn square_checks() {
        let sq = check_square_complex(&toric_code(3)).unwrap();
        assert_eq!(sq.squares.len(), 9 * 4);
        assert!(matches!(
            check_square_complex(&xxx_ziz()),
            Ok(SquareAssignment { .. })
        ));
        let zero = CssCode::from_parity_checks(&BitMatrix::zeros(3, 1), &BitMatrix::zeros(3, 1)).unwrap();
        assert!(check_square_complex(&zero).unwrap().squares.is_empty());
    }

    #[test]
    fn subdivided_torus() {
        let a = toric_code(2);
        for l in [2, 3] {
            let c = l_subdivision(&a, l).unwrap();
            let v = c.verify().unwrap();
            assert_eq!(v.total.dim(1), subdivision_qubits(&a, l));
            assert_eq!(c.code().unwrap().k(), 2);
        }
        assert!(l_subdivision(&a, 1).is_err());
    }

    #[test]
    fn orientation_search() {
        let a = toric_code(2);
        let passing: Vec<Orientation> = Orientation::all()
            .filter(|&o| build(&a, 2, o).and_then(|c| c.verify().map(|_| ())).is_ok())
            .collect();
        assert!(passing.contains(&Orientation::FROZEN), "passing: {passing:?}");
        assert_eq!(passing.len(), 6, "passing: {passing:?}");
        assert!(passing.iter().all(|o| !o.swap));
        for o in &passing {
            build(&a, 3, *o).unwrap().verify().unwrap();
        }
    }
}
