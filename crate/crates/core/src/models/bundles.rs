//! Built-in equivariant bundles and principal-connection models.

use crate::connection::{ConnectionDataG, PrincipalConnectionData};
use crate::error::Result;
use crate::gca::Scalar;
use crate::lie::LieAlgebraData;
use crate::matrix::MatrixForm;
use crate::model::{build_weil, tensor_model, GdgaModel};
use crate::morphism::curvature_coefficients;

use super::{ce_model, point_model, r2_trivial, r2rot, r3rot};

/// Cap used for the Weil factor of built-in bundles.
pub const BUNDLE_CAP: u32 = 8;

/// `(τ_a)_{bc} = ε_{abc}`; these satisfy `[τ_a, τ_b] = -f^c_{ab} τ_c` for su(2).
pub fn su2_vector_tau(m: &GdgaModel) -> Vec<MatrixForm> {
    (0..3)
        .map(|a| {
            let vals: Vec<Scalar> = (0..9)
                .map(|k| {
                    let (b, c) = (k / 3, k % 3);
                    LieAlgebraData::su2().f(a, b, c).clone()
                })
                .collect();
            MatrixForm::constant(m, 3, &vals).expect("3x3")
        })
        .collect()
}

/// Trivial line bundle over a point on which u(1) acts with weight `w`.
pub fn u1_weight(w: i64) -> Result<ConnectionDataG> {
    let g = LieAlgebraData::u1();
    let m = tensor_model(&build_weil(&g, Some(BUNDLE_CAP))?, &point_model(&g)?)?;
    let a = MatrixForm::zeros(&m, 1);
    let tau = MatrixForm::constant(&m, 1, &[Scalar::from_int(w) * Scalar::i()])?;
    ConnectionDataG::new(m, a, vec![tau])
}

/// Line bundle over the rotating plane with invariant connection
/// `A = x1 dx2 - x2 dx1` and `τ = ι A + i`.
pub fn u1_plane() -> Result<ConnectionDataG> {
    let g = LieAlgebraData::u1();
    let m = tensor_model(&build_weil(&g, Some(BUNDLE_CAP))?, &r2rot()?)?;
    let a = MatrixForm::diagonal(&m, &[m.parse("x1*dx2 - x2*dx1")?]);
    let tau = MatrixForm::diagonal(&m, &[m.parse("x1^2 + x2^2 + i")?]);
    ConnectionDataG::new(m, a, vec![tau])
}

/// The rank-3 bundle `R³ × R³` with su(2) rotating base and fiber, flat connection.
pub fn su2_vector() -> Result<ConnectionDataG> {
    let g = LieAlgebraData::su2();
    let m = tensor_model(&build_weil(&g, Some(BUNDLE_CAP))?, &r3rot(&g)?)?;
    let tau = su2_vector_tau(&m);
    let a = MatrixForm::zeros(&m, 3);
    ConnectionDataG::new(m, a, tau)
}

/// Rank 2 over a plane with trivial u(1) action and a non-abelian connection.
pub fn trivial_action_bundle() -> Result<ConnectionDataG> {
    let g = LieAlgebraData::u1();
    let m = tensor_model(&build_weil(&g, Some(BUNDLE_CAP))?, &r2_trivial(&g)?)?;
    let a = MatrixForm::from_fn(&m, 2, |i, j| match (i, j) {
        (0, 1) => m.parse("x1*dx2").expect("parses"),
        (1, 0) => m.parse("dx1").expect("parses"),
        _ => m.zero(),
    });
    let tau = MatrixForm::zeros(&m, 2);
    ConnectionDataG::new(m, a, vec![tau])
}

pub fn builtin_connections() -> Result<Vec<(&'static str, ConnectionDataG)>> {
    Ok(vec![
        ("u1-weight", u1_weight(1)?),
        ("u1-plane", u1_plane()?),
        ("su2-vector", su2_vector()?),
        ("trivial-action", trivial_action_bundle()?),
    ])
}

/// `CE(su2)_Q ⊗ CE(su2)_P ⊗ R³` with invariant `Θ` built from `x·r`, `x·dx`
/// and `|x|²`, and the flat Maurer–Cartan coefficients `φ^a = s^a`.
pub fn principal_su2() -> Result<PrincipalConnectionData> {
    let g = LieAlgebraData::su2();
    let m = tensor_model(&tensor_model(&ce_model(&g, "s")?, &ce_model(&g, "r")?)?, &r3rot(&g)?)?;
    let xr = m.parse("x1*r1 + x2*r2 + x3*r3")?;
    let xdx = m.parse("x1*dx1 + x2*dx2 + x3*dx3")?;
    let xx = m.parse("x1^2 + x2^2 + x3^2")?;
    let theta = MatrixForm::from_fn(&m, 2, |i, j| match (i, j) {
        (0, 0) => xr.clone(),
        (0, 1) => xdx.clone(),
        (1, 0) => m.mul(&xx, &xr),
        _ => m.mul(&xx, &xdx).add(&xr),
    });
    let phi: Vec<_> = (1..=3).map(|a| m.gen(&format!("s{a}"))).collect::<Result<_>>()?;
    let omega = curvature_coefficients(&m, &phi);
    PrincipalConnectionData::new(m, theta, phi, omega)
}

/// `CE(u1) ⊗ R²` with `φ = s1 + x1 dx2`, curvature `ω = dx1 dx2`.
pub fn principal_u1() -> Result<PrincipalConnectionData> {
    let g = LieAlgebraData::u1();
    let m = tensor_model(&ce_model(&g, "s")?, &r2_trivial(&g)?)?;
    let theta = MatrixForm::from_fn(&m, 2, |i, j| {
        let src = match (i, j) {
            (0, 0) => "s1",
            (0, 1) => "x1*dx2",
            (1, 0) => "dx1 + x2*s1",
            _ => "x1*x2*s1 + dx2",
        };
        m.parse(src).expect("parses")
    });
    let phi = vec![m.parse("s1 + x1*dx2")?];
    let omega = vec![m.parse("dx1*dx2")?];
    PrincipalConnectionData::new(m, theta, phi, omega)
}
