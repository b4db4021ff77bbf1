//! Toric codes and the honeycomb and triangular cones over them.

use std::fmt;
use std::str::FromStr;

use crate::chain::{tensor, BasedComplex, CellLabel};
use crate::cone::{ConeSpec, Level};

use super::repetition::{cyclic_repetition, repetition};
use super::{identity_reps, label_matrix, Construction, ConstructionError};

/// Boundary condition along one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// `R°(L)`.
    Cyclic,
    /// `R(L)`.
    Smooth,
    /// `R(L)^T`.
    Rough,
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cyclic => "cyclic",
            Self::Smooth => "smooth",
            Self::Rough => "rough",
        })
    }
}

impl FromStr for Boundary {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cyclic" | "c" | "periodic" => Ok(Self::Cyclic),
            "smooth" | "s" => Ok(Self::Smooth),
            "rough" | "r" => Ok(Self::Rough),
            other => Err(ConstructionError::Parameter(format!("unknown boundary '{other}'"))),
        }
    }
}

impl Boundary {
    fn axis(self, l: usize) -> Result<BasedComplex, ConstructionError> {
        match self {
            Self::Cyclic => cyclic_repetition(l),
            Self::Smooth => repetition(l),
            Self::Rough => Ok(repetition(l)?.transpose_complex()),
        }
    }
}

/// `X ⊗ Y` with the chosen boundaries.
#[derive(Clone, Debug)]
pub struct ToricCode {
    pub bc: (Boundary, Boundary),
    pub size: (usize, usize),
    pub complex: BasedComplex,
}

impl ToricCode {
    /// Shifts the doubled coordinate `c` on axis `axis` by `delta` half-steps,
    /// wrapping on cyclic axes.
    fn shift(&self, axis: usize, c: i64, delta: i64) -> i64 {
        let (bc, l) = if axis == 0 { (self.bc.0, self.size.0) } else { (self.bc.1, self.size.1) };
        let c = c + delta;
        if bc == Boundary::Cyclic {
            let span = 2 * l as i64;
            (c - 2).rem_euclid(span) + 2
        } else {
            c
        }
    }

    fn cell(&self, x: i64, y: i64) -> CellLabel {
        CellLabel::pair(CellLabel::Coord(x), CellLabel::Coord(y))
    }

    fn coords(label: &CellLabel) -> (i64, i64) {
        let parts = label.parts().expect("toric labels are pairs");
        (
            parts[0].coord().expect("coordinate"),
            parts[1].coord().expect("coordinate"),
        )
    }
}

/// Toric code `X ⊗ Y` of size `lx × ly`.
///
/// # Errors
///
/// Rejects sizes below 2.
pub fn toric(bx: Boundary, by: Boundary, lx: usize, ly: usize) -> Result<ToricCode, ConstructionError> {
    if lx < 2 || ly < 2 {
        return Err(ConstructionError::Parameter(format!("toric code size {lx}x{ly} must be at least 2x2")));
    }
    let complex = tensor(&bx.axis(lx)?, &by.axis(ly)?)?;
    Ok(ToricCode {
        bc: (bx, by),
        size: (lx, ly),
        complex,
    })
}

fn with_height(cell: CellLabel, h: CellLabel) -> CellLabel {
    CellLabel::pair(cell, h)
}

/// Honeycomb cone: every vertex of the toric code is split into the two ends of
/// an `R(2)`, producing a weight-3 X-check layout.
///
/// # Errors
///
/// Fails only on internal inconsistencies.
pub fn honeycomb_cone(t: &ToricCode) -> Result<Construction, ConstructionError> {
    let tor = &t.complex;
    let c0 = tensor(&BasedComplex::point(tor.basis(0).to_vec()), &repetition(2)?)?;
    let mut spec = ConeSpec::new(vec![
        Level::new(c0.clone(), 0),
        Level::new(BasedComplex::point(tor.basis(1).to_vec()), 1),
        Level::new(BasedComplex::point(tor.basis(2).to_vec()), 2),
    ]);
    spec.set_block(1, 2, 2, tor.diff(2))?;
    let one = CellLabel::whole(1);
    let two = CellLabel::whole(2);
    spec.set_block_by_labels(0, 1, 1, |e| {
        let (x, y) = ToricCode::coords(e);
        if x.rem_euclid(2) == 1 {
            vec![
                with_height(t.cell(t.shift(0, x, 1), y), two.clone()),
                with_height(t.cell(t.shift(0, x, -1), y), one.clone()),
            ]
        } else {
            vec![
                with_height(t.cell(x, t.shift(1, y, 1)), one.clone()),
                with_height(t.cell(x, t.shift(1, y, -1)), two.clone()),
            ]
        }
    })?;
    spec.set_block_by_labels(0, 2, 2, |f| {
        let (x, y) = ToricCode::coords(f);
        let mid = CellLabel::half(1);
        vec![
            with_height(t.cell(t.shift(0, x, 1), t.shift(1, y, 1)), mid.clone()),
            with_height(t.cell(t.shift(0, x, -1), t.shift(1, y, -1)), mid),
        ]
    })?;
    let reps0 = label_matrix(tor.basis(0), &c0, 0, |v| vec![with_height(v.clone(), one.clone())]);
    Ok(Construction {
        name: "honeycomb".into(),
        spec,
        declared: tor.clone(),
        declared_reps: vec![reps0, identity_reps(tor.dim(1)), identity_reps(tor.dim(2))],
        regular_degrees: vec![0, 1, 2],
    })
}

/// Triangular cone: every plaquette is split into two triangles along its diagonal.
///
/// # Errors
///
/// Fails only on internal inconsistencies.
pub fn triangular_cone(t: &ToricCode) -> Result<Construction, ConstructionError> {
    let tor = &t.complex;
    let c2 = tensor(&BasedComplex::point(tor.basis(2).to_vec()), &repetition(2)?.transpose_complex())?;
    let mut spec = ConeSpec::new(vec![
        Level::new(BasedComplex::point(tor.basis(0).to_vec()), 0),
        Level::new(BasedComplex::point(tor.basis(1).to_vec()), 1),
        Level::new(c2.clone(), 1),
    ]);
    spec.set_block(0, 1, 1, tor.diff(1))?;
    spec.set_block_by_labels(1, 2, 2, |cell| {
        let parts = cell.parts().expect("pair");
        let (x, y) = ToricCode::coords(&parts[0]);
        if parts[1] == CellLabel::whole(1) {
            vec![t.cell(t.shift(0, x, 1), y), t.cell(x, t.shift(1, y, -1))]
        } else {
            vec![t.cell(t.shift(0, x, -1), y), t.cell(x, t.shift(1, y, 1))]
        }
    })?;
    spec.set_block_by_labels(0, 2, 1, |cell| {
        let parts = cell.parts().expect("pair");
        let (x, y) = ToricCode::coords(&parts[0]);
        vec![
            t.cell(t.shift(0, x, 1), t.shift(1, y, 1)),
            t.cell(t.shift(0, x, -1), t.shift(1, y, -1)),
        ]
    })?;
    let reps2 = label_matrix(tor.basis(2), &c2, 1, |f| {
        vec![with_height(f.clone(), CellLabel::whole(1)), with_height(f.clone(), CellLabel::whole(2))]
    });
    Ok(Construction {
        name: "triangular".into(),
        spec,
        declared: tor.clone(),
        declared_reps: vec![identity_reps(tor.dim(0)), identity_reps(tor.dim(1)), reps2],
        regular_degrees: vec![0, 1, 2],
    })
}
