//! Layer codes: every generator and qubit of a CSS code becomes a toric plane.

use crate::chain::{direct_sum, tensor, BasedComplex, CellLabel};
use crate::cone::{ConeSpec, Level};
use crate::css::{CssCode, Side};

use super::repetition::{repetition, string_defect};
use super::{column_matrix, reject_empty, Construction, ConstructionError};

/// Consecutive pairs of an ascending list: `(s₁,s₂), (s₃,s₄), …`.
///
/// # Errors
///
/// Rejects odd lengths.
pub fn pair_common_qubits(sorted: &[usize]) -> Result<Vec<(usize, usize)>, ConstructionError> {
    if sorted.len() % 2 == 1 {
        return Err(ConstructionError::OddDefect(sorted.len()));
    }
    Ok(sorted.chunks(2).map(|p| (p[0], p[1])).collect())
}

fn planes(n: usize, plane: &BasedComplex) -> Result<BasedComplex, ConstructionError> {
    let parts: Vec<(CellLabel, BasedComplex)> = (1..=n as i64).map(|t| (CellLabel::Int(t), plane.clone())).collect();
    Ok(direct_sum(&parts)?)
}

fn cell(a: CellLabel, b: CellLabel, tag: usize) -> CellLabel {
    CellLabel::pair(CellLabel::pair(a, b), CellLabel::Int(tag as i64))
}

fn split(label: &CellLabel) -> (i64, i64, usize) {
    let outer = label.parts().expect("plane label");
    let inner = outer[0].parts().expect("plane cell");
    let tag = match outer[1] {
        CellLabel::Int(t) => t as usize,
        _ => unreachable!("plane tags are integers"),
    };
    (inner[0].coord().expect("coord"), inner[1].coord().expect("coord"), tag)
}

fn whole_index(c: i64) -> Option<usize> {
    (c.rem_euclid(2) == 0).then_some((c / 2) as usize)
}

/// The 3-level layer-code cone over `A`. Z-type planes `Y^T ⊗ Z^T` sit at level 2,
/// qubit planes `X ⊗ Z^T` at level 1 and X-type planes `X ⊗ Y` at level 0,
/// with `X = R(n_Z)`, `Y = R(n)`, `Z = R(n_X)`.
///
/// # Errors
///
/// Rejects codes without generators of either type and generators with empty support.
pub fn layer_code(a: &CssCode) -> Result<Construction, ConstructionError> {
    let (n, n_z, n_x) = (a.n(), a.n_z(), a.n_x());
    if n_z == 0 || n_x == 0 {
        return Err(ConstructionError::Parameter(format!(
            "layer code needs both generator types (n_Z = {n_z}, n_X = {n_x})"
        )));
    }
    reject_empty(a)?;
    let x = repetition(n_z)?;
    let y = repetition(n)?;
    let z = repetition(n_x)?;
    let c2 = planes(n_z, &tensor(&y.transpose_complex(), &z.transpose_complex())?)?;
    let c1 = planes(n, &tensor(&x, &z.transpose_complex())?)?;
    let c0 = planes(n_x, &tensor(&x, &y)?)?;
    let d2 = a.complex().diff_ref(2);
    let d1 = a.complex().diff_ref(1);
    let mut spec = ConeSpec::new(vec![
        Level::new(c0.clone(), 0),
        Level::new(c1.clone(), 0),
        Level::new(c2.clone(), 0),
    ]);
    for i in 1..=2 {
        spec.set_block_by_labels(1, 2, i, |l| {
            let (yc, zc, x0) = split(l);
            match whole_index(yc) {
                Some(y0) if d2.get(y0 - 1, x0 - 1) => {
                    vec![cell(CellLabel::whole(x0 as i64), CellLabel::Coord(zc), y0)]
                }
                _ => Vec::new(),
            }
        })?;
        spec.set_block_by_labels(0, 1, i, |l| {
            let (xc, zc, y0) = split(l);
            match whole_index(zc) {
                Some(z0) if d1.get(z0 - 1, y0 - 1) => {
                    vec![cell(CellLabel::Coord(xc), CellLabel::whole(y0 as i64), z0)]
                }
                _ => Vec::new(),
            }
        })?;
    }
    let mut defects = Vec::with_capacity(n_z * n_x);
    for x0 in 0..n_z {
        for z0 in 0..n_x {
            let common: Vec<usize> = a.complex().common_support(x0, z0)?.into_iter().map(|q| q + 1).collect();
            defects.push(string_defect(n, &common)?);
        }
    }
    for i in 1..=2 {
        spec.set_block_by_labels(0, 2, i, |l| {
            let (yc, zc, x0) = split(l);
            match whole_index(zc) {
                Some(z0) if defects[(x0 - 1) * n_x + z0 - 1].contains(yc) => {
                    vec![cell(CellLabel::whole(x0 as i64), CellLabel::Coord(yc + 1), z0)]
                }
                _ => Vec::new(),
            }
        })?;
    }
    let reps2 = column_matrix(c2.dim(2), n_z, |col| {
        (1..=n as i64)
            .flat_map(|y0| (1..=n_x as i64).map(move |z0| (y0, z0)))
            .filter_map(|(y0, z0)| c2.index_of(2, &cell(CellLabel::whole(y0), CellLabel::whole(z0), col + 1)))
            .collect()
    });
    let reps1 = column_matrix(c1.dim(1), n, |col| {
        (1..=n_x as i64)
            .filter_map(|z0| c1.index_of(1, &cell(CellLabel::whole(1), CellLabel::whole(z0), col + 1)))
            .collect()
    });
    let reps0 = column_matrix(c0.dim(0), n_x, |col| {
        c0.index_of(0, &cell(CellLabel::whole(1), CellLabel::whole(1), col + 1)).into_iter().collect()
    });
    Ok(Construction {
        name: "layer".into(),
        spec,
        declared: a.complex().clone(),
        declared_reps: vec![reps0, reps1, reps2],
        regular_degrees: vec![1],
    })
}

/// Exact rational lower bound `d ≥ num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Bound {
    pub num: usize,
    pub den: usize,
}

impl Bound {
    #[must_use]
    pub fn satisfied_by(&self, d: usize) -> bool {
        d * self.den >= self.num
    }
}

/// Distance lower bounds `2·d^A_α·d¹_α / w_α` of a layer code, with
/// `d¹_Z = n_X` and `d¹_X = n_Z`. Absent when `A` has no logical qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct LayerBound {
    pub z: Option<Bound>,
    pub x: Option<Bound>,
}

/// # Errors
///
/// Fails when `w_Z` or `w_X` is below 2 or a distance of `A` exceeds `cap`.
pub fn layer_distance_bound(a: &CssCode, cap: usize) -> Result<LayerBound, ConstructionError> {
    let w = a.weights();
    if w.w_z < 2 || w.w_x < 2 {
        return Err(ConstructionError::Parameter(format!(
            "layer distance bound needs w_Z, w_X >= 2 (got {}, {})",
            w.w_z, w.w_x
        )));
    }
    let bound = |side, d1: usize, weight: usize| -> Result<Option<Bound>, ConstructionError> {
        Ok(a.distance(side, cap)?.map(|d| Bound {
            num: 2 * d * d1,
            den: weight,
        }))
    };
    Ok(LayerBound {
        z: bound(Side::Z, a.n_x(), w.w_z)?,
        x: bound(Side::X, a.n_z(), w.w_x)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::codes::{steane, toric_code, xxx_ziz};
    use crate::f2linalg::BitVec;

    #[test]
    fn pairing_matches_worked_example() {
        let pairs = pair_common_qubits(&[1, 6, 7, 9, 10, 11]).unwrap();
        assert_eq!(pairs, vec![(1, 6), (7, 9), (10, 11)]);
        assert!(pair_common_qubits(&[1, 2, 3]).is_err());
    }

    #[test]
    fn xxx_ziz_layer() {
        let c = layer_code(&xxx_ziz()).unwrap();
        let v = c.verify().unwrap();
        assert_eq!(v.total.dim(1), 7);
        assert_eq!(c.code().unwrap().k(), 1);
    }

    #[test]
    fn xxx_ziz_logical_lift_is_a_cycle() {
        let c = layer_code(&xxx_ziz()).unwrap();
        let analysis = c.spec.analyze().unwrap();
        let z = analysis.lift_class(1, &BitVec::ones(1)).unwrap();
        let code = c.code().unwrap();
        assert!(code.is_nontrivial_logical(Side::Z, &z));
    }

    #[test]
    fn steane_and_torus_layers() {
        for a in [steane(), toric_code(2)] {
            let c = layer_code(&a).unwrap();
            c.verify().unwrap();
            assert_eq!(c.code().unwrap().k(), a.k());
        }
    }

    #[test]
    fn bound_is_exact_fraction() {
        let b = layer_distance_bound(&steane(), 24).unwrap();
        assert_eq!(b.z, Some(Bound { num: 18, den: 4 }));
        assert!(b.z.unwrap().satisfied_by(5));
        assert!(!b.z.unwrap().satisfied_by(4));
    }
}
