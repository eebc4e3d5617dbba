//! Built-in geometries: Chevalley–Eilenberg algebras, the rotating sphere,
//! flat spaces and tori, and auxiliary parameter algebras.

mod bundles;
mod ce;
mod flat;
mod sphere;
mod supermodels;

pub use bundles::{
    builtin_connections, principal_su2, principal_u1, su2_vector, su2_vector_tau, trivial_action_bundle,
    u1_plane, u1_weight, BUNDLE_CAP,
};
pub use ce::ce_model;
pub use flat::{point_model, r2_trivial, r2rot, r3rot, time_parameter, torus2, warped_torus_family};
pub use sphere::{sphere_area_form, sphere_model};
pub use supermodels::{builtin_superconnections, torus_bismut, torus_bismut_data, torus_superconnection, SUPER_CAP};

use crate::error::{Error, Result};
use crate::lie::LieAlgebraData;
use crate::model::{build_weil, GdgaModel};

/// Names accepted by [`builtin_model`].
pub const BUILTIN_NAMES: &[&str] = &["u1", "su2", "so3", "ab2", "ce:su2", "ce:u1", "torus2", "s2rot", "r2rot", "r3rot"];

/// Default cap used for Weil algebras addressed by name.
pub const DEFAULT_WEIL_CAP: u32 = 9;

pub fn builtin_model(name: &str, cap: Option<u32>) -> Result<GdgaModel> {
    if let Some(g) = LieAlgebraData::builtin(name) {
        return build_weil(&g, Some(cap.unwrap_or(DEFAULT_WEIL_CAP)));
    }
    if let Some(rest) = name.strip_prefix("ce:") {
        let g = LieAlgebraData::builtin(rest).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        return ce_model(&g, "s");
    }
    let m = match name {
        "torus2" => torus2(true)?,
        "s2rot" => sphere_model()?,
        "r2rot" => r2rot()?,
        "r3rot" => r3rot(&LieAlgebraData::su2())?,
        _ => return Err(Error::InvalidParameter(format!("unknown built-in model `{name}`"))),
    };
    Ok(m.with_cap(cap))
}
