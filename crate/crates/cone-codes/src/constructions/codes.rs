//! Small named codes used throughout the examples and tests.

use crate::css::CssCode;
use crate::f2linalg::BitMatrix;

use super::toric::{toric, Boundary};

/// Hamming `[7,4]` parity checks, one column per check.
fn hamming() -> BitMatrix {
    BitMatrix::from_bits(&[
        &[1, 0, 0],
        &[0, 1, 0],
        &[1, 1, 0],
        &[0, 0, 1],
        &[1, 0, 1],
        &[0, 1, 1],
        &[1, 1, 1],
    ])
}

/// Steane `[[7,1,3]]` code.
#[must_use]
pub fn steane() -> CssCode {
    CssCode::from_parity_checks(&hamming(), &hamming()).expect("Hamming checks are self-orthogonal")
}

/// Three qubits with generators `XXX` and `ZIZ`.
#[must_use]
pub fn xxx_ziz() -> CssCode {
    let h_x = BitMatrix::from_bits(&[&[1], &[1], &[1]]);
    let h_z = BitMatrix::from_bits(&[&[1], &[0], &[1]]);
    CssCode::from_parity_checks(&h_x, &h_z).expect("XXX and ZIZ commute")
}

/// Toric code on an `l × l` torus.
///
/// # Panics
///
/// Panics for `l < 2`.
#[must_use]
pub fn toric_code(l: usize) -> CssCode {
    let t = toric(Boundary::Cyclic, Boundary::Cyclic, l, l).expect("l >= 2");
    CssCode::from_complex(t.complex).expect("toric complex has length 2")
}
