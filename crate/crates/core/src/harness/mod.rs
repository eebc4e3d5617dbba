//! Fiber integration, geometric families and the end-to-end checks.

mod checks;
mod integrate;

pub use checks::{
    dh_localization, equivariant_sphere, index_check, mean_curvature_check, sphere_index_input, sphere_index_oracle,
    torus_index_input, torus_transgression, IndexInput,
};
pub use integrate::{
    fiber_integrate, flat_torus_family, sphere_family, stokes_report, warped_torus, FamilyModel, Fiber,
    IntegrationFunctional,
};
