//! Built-in superconnections over the torus, with a formal time parameter.

use crate::error::Result;
use crate::lie::LieAlgebraData;
use crate::matrix::MatrixForm;
use crate::model::{build_weil, tensor_model, GdgaModel};
use crate::superconn::{assemble_bg, BismutData, SuperconnectionModel};

use super::{time_parameter, torus2};

/// Cap for the Weil factor of the equivariant superconnection example.
pub const SUPER_CAP: u32 = 6;

const PARITY: [bool; 4] = [false, false, true, true];

/// A `(2|2)` matrix from sparse `(row, col, expression)` entries.
fn sparse(m: &GdgaModel, items: &[(usize, usize, &str)]) -> Result<MatrixForm> {
    let mut out = MatrixForm::graded_zeros(m, PARITY.to_vec());
    for &(i, j, src) in items {
        out.set(i, j, m.parse(src)?);
    }
    Ok(out)
}

/// `T² ⊗ {rt, rti}` with a `(2|2)` superconnection whose odd 0-form part
/// `D = c2 E_03 + s1 E_31` has nilpotent `D² = c2 s1 E_01`, so the heat
/// expansion still terminates.
pub fn torus_superconnection() -> Result<SuperconnectionModel> {
    let g = LieAlgebraData::u1();
    let m = tensor_model(&torus2(false)?, &time_parameter(&g)?)?;
    let mat = sparse(
        &m,
        &[
            (0, 3, "c2"),
            (3, 1, "s1"),
            (0, 0, "c1*e2"),
            (0, 1, "e1"),
            (1, 0, "s2*e2"),
            (1, 1, "e1 + e2"),
            (2, 2, "e2"),
            (2, 3, "c1*e1"),
            (3, 2, "e1"),
            (3, 3, "s1*e2"),
            (2, 0, "e1*e2"),
            (1, 3, "c2*e1*e2"),
        ],
    )?;
    SuperconnectionModel::new(m, mat, true)
}

/// `W(u1) ⊗ T² ⊗ {rt, rti}` with u(1) translating the first circle. The
/// vertical weights `τ - ι A = diag(0, i, 2i, 0)` leave the pair `(1, 2)`
/// uncoupled, so the equivariant Chern character sees the Weil generator.
pub fn torus_bismut_data() -> Result<BismutData> {
    let g = LieAlgebraData::u1();
    let w = build_weil(&g, Some(SUPER_CAP))?;
    let m = tensor_model(&tensor_model(&w, &torus2(true)?)?, &time_parameter(&g)?)?;
    Ok(BismutData {
        dirac: sparse(&m, &[(0, 3, "c2")])?,
        a: sparse(&m, &[(0, 0, "c2*e1"), (1, 1, "c2*e1 + s2*e2"), (2, 2, "e2"), (3, 3, "c2*e1 + e2")])?,
        tau: vec![sparse(&m, &[(0, 0, "c2"), (1, 1, "c2 + i"), (2, 2, "2*i"), (3, 3, "c2")])?],
        k: sparse(&m, &[(0, 0, "e1"), (1, 1, "e1"), (2, 2, "e1"), (3, 3, "e1")])?,
        ct: sparse(&m, &[(0, 3, "e1*e2"), (3, 0, "s2*e1*e2")])?,
        pxi: vec![sparse(&m, &[(0, 3, "1"), (3, 0, "1")])?],
        model: m,
        parity: PARITY.to_vec(),
    })
}

pub fn torus_bismut() -> Result<SuperconnectionModel> {
    assemble_bg(&torus_bismut_data()?)
}

pub fn builtin_superconnections() -> Result<Vec<(&'static str, SuperconnectionModel)>> {
    Ok(vec![("torus-22", torus_superconnection()?), ("torus-bismut-u1", torus_bismut()?)])
}
